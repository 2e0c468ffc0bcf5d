#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace memcell {

struct Constant {
  double level;  // volts
};

struct Sine {
  double amplitude;    // volts
  double frequency;    // hertz
  double phase = 0.0;  // radians
};

struct Segment {
  double duration;  // seconds, > 0
  std::variant<Constant, Sine> shape;
};

/// Piecewise drive signal: `segments` played back-to-back, the whole list
/// repeated `repeat_count` times. Every piece is half-open [start, end), so
/// value() is right-continuous at the breakpoints. Outside [0, duration())
/// the source is quiescent and reads 0 V.
class Waveform {
 public:
  /// One expanded segment occurrence on the absolute time axis.
  struct Piece {
    double start;
    double end;
    std::size_t segment;  // index into segments()
  };

  /// Throws ErrorKind::Range on an empty segment list, a non-positive or
  /// non-finite duration, or repeat_count < 1.
  explicit Waveform(std::vector<Segment> segments, int repeat_count = 1);

  double value(double t) const;

  /// Shape of `piece` evaluated at absolute time t. Lets the integrator use
  /// the left limit at a piece's end without stepping into the next piece.
  double value_in(const Piece& piece, double t) const;

  /// Index of the piece containing t, or pieces().size() past the end.
  std::size_t piece_index(double t) const;

  double duration() const noexcept { return duration_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  int repeat_count() const noexcept { return repeat_count_; }

  /// Piece boundaries strictly inside (0, duration()) plus duration() itself.
  std::vector<double> breakpoints() const;

  double max_abs() const;
  bool is_nonnegative() const;

 private:
  std::vector<Segment> segments_;
  int repeat_count_;
  std::vector<Piece> pieces_;
  double duration_ = 0.0;
};

struct ReadPulseSpec {
  double amplitude = 1.0;     // volts
  double half_period = 2e-3;  // seconds
};

/// Unipolar train of n pulses: `amplitude` for t_on then 0 V for t_off.
/// Throws ErrorKind::Range for amplitude outside [0, 5] V, non-positive
/// timings or n < 1.
Waveform make_write_pulse_train(double amplitude, double t_on, double t_off, int n);

/// Positive-first symmetric rectangle: +A for half_period, then -A for
/// half_period. Its time average is exactly zero.
Waveform make_read_pulse(const ReadPulseSpec& spec);

/// +A for positive_time then -A for negative_time. Equal times reproduce
/// make_read_pulse(); unequal times give the non-zero-average variants used
/// to study read disturb.
Waveform make_bipolar_pulse(double amplitude, double positive_time, double negative_time);

/// A * sin(2 pi f t) over `periods` whole periods.
Waveform make_sine(double amplitude, double frequency, int periods = 1);

/// Exact average over [0, duration()). Rectangle areas are accumulated with
/// error-free products and sums, so equal and opposite areas cancel to 0.
/// Whole-period sine segments contribute exactly 0.
double time_average(const Waveform& w);

}  // namespace memcell
