#pragma once

#include <vector>

#include "memcell/devices.hpp"
#include "memcell/transient.hpp"
#include "memcell/waveform.hpp"

namespace memcell {

/// V_S level separating write (above) from read (below). A tie counts as
/// write, the side the safety margin protects.
inline constexpr double kModeThreshold = 2.2;

/// Bit decision level for the memristor state, volts.
inline constexpr double kBitThreshold = 2.5;

CellMode detect_mode(double v_s, double threshold = kModeThreshold);

struct SourceFollowerTap {
  double v_s;
  double gate_drive;  // V_G, equal to the cell input
};

/// The PMOS detector sits on the input in parallel with the memristor.
SourceFollowerTap source_follower_path(double v_in, const PmosStageParams& p = {});

struct CellParams {
  EmulatorParams emulator;
  PmosStageParams pmos;
  ComparatorParams comparator;
  double mode_threshold = kModeThreshold;
  double restore_rel_tol = 0.01;     // fraction of the pre-read state
  double restore_abs_floor = 5e-3;   // volts

  void validate() const;
};

struct ReadResult {
  bool high = false;
  double bit = 0.0;           // v_high or v_low
  double sample_time = 0.0;   // seconds from the start of the read pulse
  double state_before = 0.0;
  double state_after = 0.0;
  double peak_state = 0.0;    // largest state seen during the pulse
  bool restored = false;      // |after - before| within restoration tolerance
};

struct ReadOutcome {
  ReadResult result;
  Trace trace;
};

/// The switchless read/write cell: emulator memristor driven directly by the
/// input, PMOS source follower on the same input as a read detector, a first
/// comparator turning V_S < 2.2 V into a reference enable, an attenuator
/// halving the rail to 2.5 V, and a second comparator latching the bit.
///
/// The bit register is strobed at the midpoint of every constant negative
/// piece that the detector classifies as a read. Between strobes it holds.
class MemoryCell {
 public:
  explicit MemoryCell(const CellParams& params = {}, double initial_state = 0.0);

  const CellParams& params() const noexcept { return params_; }
  double state() const noexcept { return device_.state(); }
  /// Presets the stored state without simulating a write.
  void set_state(double v_c) { device_.set_state(v_c); }
  /// Starts at v_high: the read output is high until a low state is read.
  double last_bit() const noexcept { return last_bit_; }
  CellMode mode() const noexcept { return mode_; }

  /// Applies a unipolar train of n pulses. Throws ErrorKind::Range for an
  /// amplitude outside [0, 5] V and ErrorKind::Protocol if the detector ever
  /// reports a read while writing.
  Trace write(double amplitude, double t_on, double t_off, int n, const SimConfig& cfg);

  /// Holds a single unipolar pulse of `amplitude` until the state reaches
  /// `target`, then releases it. The state overshoots by at most one step.
  /// Throws ErrorKind::Precondition when the target is below the current
  /// state (a unipolar write cannot lower an incremental device) or out of
  /// the state range.
  Trace write_level(double target, double amplitude, const SimConfig& cfg);

  /// Applies a zero-average read pulse and samples the bit at the midpoint of
  /// its negative half. Throws ErrorKind::Precondition if the pulse average is
  /// not exactly zero and ErrorKind::Protocol if the detector does not see a
  /// read at the strobe instant.
  ReadOutcome read(const ReadPulseSpec& pulse, const SimConfig& cfg);

  /// Runs an arbitrary waveform on a copy of the cell and returns the full
  /// trace. Neither the stored state nor the bit register change.
  Trace read_distortion_probe(const Waveform& pulse, const SimConfig& cfg) const;

  double restoration_tolerance(double state_before) const noexcept;

  /// Midpoints of the constant pieces of `w` that the detector reads as a
  /// read request.
  std::vector<double> strobe_times(const Waveform& w) const;

 private:
  struct RunResult {
    Trace trace;
    double latch;
    CellMode final_mode;
  };

  RunResult run(EmulatorMemristor& device, const Waveform& w, const SimConfig& cfg, double latch,
                bool forbid_read, const StopPredicate& stop = {}) const;

  CellParams params_;
  EmulatorMemristor device_;
  double last_bit_;
  CellMode mode_ = CellMode::Idle;
};

}  // namespace memcell
