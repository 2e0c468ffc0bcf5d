#include "memcell/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "memcell/error.hpp"

namespace memcell {

namespace {

constexpr double kMaxWriteLevel = 5.0;

// Error-free transformations (Knuth TwoSum, FMA-based TwoProduct).
struct Exact {
  double hi = 0.0;
  double lo = 0.0;

  void add(double x) {
    const double s = hi + x;
    const double bp = s - hi;
    const double err = (hi - (s - bp)) + (x - bp);
    hi = s;
    lo += err;
  }

  void add_product(double a, double b) {
    const double p = a * b;
    const double e = std::fma(a, b, -p);
    add(p);
    add(e);
  }

  double value() const { return hi + lo; }
};

double sine_integral(const Sine& s, double duration) {
  const double cycles = s.frequency * duration;
  if (std::fabs(cycles - std::round(cycles)) <= 1e-12 * std::max(1.0, cycles)) return 0.0;
  const double w = 2.0 * std::numbers::pi * s.frequency;
  return s.amplitude / w * (std::cos(s.phase) - std::cos(w * duration + s.phase));
}

}  // namespace

Waveform::Waveform(std::vector<Segment> segments, int repeat_count)
    : segments_(std::move(segments)), repeat_count_(repeat_count) {
  if (segments_.empty()) fail(ErrorKind::Range, "waveform needs at least one segment");
  if (repeat_count_ < 1) fail(ErrorKind::Range, "waveform repeat_count must be >= 1");
  for (const auto& seg : segments_) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
      fail(ErrorKind::Range, "waveform segment duration must be finite and > 0");
    if (const auto* s = std::get_if<Sine>(&seg.shape)) {
      if (!(s->frequency > 0.0) || !std::isfinite(s->amplitude))
        fail(ErrorKind::Range, "sine segment needs frequency > 0 and finite amplitude");
    } else if (!std::isfinite(std::get<Constant>(seg.shape).level)) {
      fail(ErrorKind::Range, "constant segment level must be finite");
    }
  }

  pieces_.reserve(segments_.size() * static_cast<std::size_t>(repeat_count_));
  double t = 0.0;
  for (int r = 0; r < repeat_count_; ++r) {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const double end = t + segments_[i].duration;
      pieces_.push_back({t, end, i});
      t = end;
    }
  }
  duration_ = t;
}

double Waveform::value_in(const Piece& piece, double t) const {
  const Segment& seg = segments_[piece.segment];
  if (const auto* c = std::get_if<Constant>(&seg.shape)) return c->level;
  const auto& s = std::get<Sine>(seg.shape);
  return s.amplitude * std::sin(2.0 * std::numbers::pi * s.frequency * (t - piece.start) + s.phase);
}

std::size_t Waveform::piece_index(double t) const {
  if (t < 0.0) return pieces_.size();
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double x, const Piece& p) { return x < p.start; });
  if (it == pieces_.begin()) return pieces_.size();
  --it;
  if (t >= it->end) return pieces_.size();
  return static_cast<std::size_t>(it - pieces_.begin());
}

double Waveform::value(double t) const {
  const std::size_t i = piece_index(t);
  if (i >= pieces_.size()) return 0.0;
  return value_in(pieces_[i], t);
}

std::vector<double> Waveform::breakpoints() const {
  std::vector<double> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.end);
  return out;
}

double Waveform::max_abs() const {
  double m = 0.0;
  for (const auto& seg : segments_) {
    if (const auto* c = std::get_if<Constant>(&seg.shape))
      m = std::max(m, std::fabs(c->level));
    else
      m = std::max(m, std::fabs(std::get<Sine>(seg.shape).amplitude));
  }
  return m;
}

bool Waveform::is_nonnegative() const {
  return std::all_of(segments_.begin(), segments_.end(), [](const Segment& seg) {
    const auto* c = std::get_if<Constant>(&seg.shape);
    return c != nullptr && c->level >= 0.0;
  });
}

Waveform make_write_pulse_train(double amplitude, double t_on, double t_off, int n) {
  if (!(amplitude >= 0.0 && amplitude <= kMaxWriteLevel)) {
    std::ostringstream os;
    os << "write amplitude " << amplitude << " V outside [0, " << kMaxWriteLevel << "] V";
    fail(ErrorKind::Range, os.str());
  }
  if (!(t_on > 0.0) || !(t_off > 0.0)) fail(ErrorKind::Range, "write pulse t_on and t_off must be > 0");
  if (n < 1) fail(ErrorKind::Range, "write pulse train needs at least one pulse");
  return Waveform({{t_on, Constant{amplitude}}, {t_off, Constant{0.0}}}, n);
}

Waveform make_bipolar_pulse(double amplitude, double positive_time, double negative_time) {
  if (!(amplitude > 0.0)) fail(ErrorKind::Range, "bipolar pulse amplitude must be > 0");
  return Waveform({{positive_time, Constant{amplitude}}, {negative_time, Constant{-amplitude}}});
}

Waveform make_read_pulse(const ReadPulseSpec& spec) {
  if (!(spec.half_period > 0.0)) fail(ErrorKind::Range, "read pulse half period must be > 0");
  return make_bipolar_pulse(spec.amplitude, spec.half_period, spec.half_period);
}

Waveform make_sine(double amplitude, double frequency, int periods) {
  if (!(amplitude > 0.0)) fail(ErrorKind::Range, "sine amplitude must be > 0");
  if (!(frequency > 0.0)) fail(ErrorKind::Range, "sine frequency must be > 0");
  return Waveform({{1.0 / frequency, Sine{amplitude, frequency, 0.0}}}, periods);
}

double time_average(const Waveform& w) {
  Exact one_pass;
  for (const auto& seg : w.segments()) {
    if (const auto* c = std::get_if<Constant>(&seg.shape))
      one_pass.add_product(c->level, seg.duration);
    else
      one_pass.add(sine_integral(std::get<Sine>(seg.shape), seg.duration));
  }
  const double area = one_pass.value();
  if (area == 0.0) return 0.0;
  // Repeats do not change the average; divide by one pass.
  Exact span;
  for (const auto& seg : w.segments()) span.add(seg.duration);
  return area / span.value();
}

}  // namespace memcell
