#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "memcell/devices.hpp"
#include "memcell/waveform.hpp"

namespace memcell {

enum class Method { Rk4, Euler };

struct SimConfig {
  double dt = 1e-6;              // seconds
  double t_end = 1e-3;           // seconds
  Method method = Method::Rk4;
  std::size_t record_stride = 1; // keep every n-th step (breakpoints always kept)

  /// Throws ErrorKind::Range unless dt > 0, t_end >= dt and stride >= 1.
  void validate() const;
};

/// Protocol state of the read/write cell, derived from the detector stage.
enum class CellMode { Idle, Write, Read };

std::string_view to_string(CellMode m) noexcept;
std::string_view to_string(Method m) noexcept;

struct TraceRow {
  double t = 0.0;        // seconds
  double v_in = 0.0;     // drive voltage
  double v_m = 0.0;      // voltage across the memristor
  double i_m = 0.0;      // amperes
  double state = 0.0;    // model units (volts for the emulator, meters for w)
  double v_s = 0.0;      // detector source voltage
  CellMode mode = CellMode::Idle;
  double bit_out = 0.0;  // latched read output
};

struct Trace {
  std::vector<TraceRow> rows;

  bool empty() const noexcept { return rows.empty(); }
  double t_begin() const { return rows.front().t; }
  double t_end() const { return rows.back().t; }

  /// Linearly interpolated state. Throws ErrorKind::Input outside the span.
  double state_at(double t) const;

  /// Appends `other` shifted by `offset` seconds, dropping its first row
  /// when it coincides with the current last row.
  void append(const Trace& other, double offset);
};

/// Called on every accepted step (and on the initial point) in time order.
/// Fills the circuit columns v_s, mode and bit_out; may throw to abort.
using StepObserver = std::function<void(TraceRow&)>;

/// Returning true stops the run after the current step.
using StopPredicate = std::function<bool(const TraceRow&)>;

struct IntegrateHooks {
  StepObserver observer;
  StopPredicate stop_when;
  /// Extra instants the step grid must land on exactly (sample strobes).
  std::span<const double> extra_stops;
};

/// Fixed-step integration of `device` driven directly by `drive` (v_M = v_in)
/// over [0, cfg.t_end].
///
/// The grid is split at every waveform breakpoint and extra stop so that no
/// step straddles a discontinuity; inside each interval the steps are equal
/// and no longer than cfg.dt. Within an interval the drive is evaluated on
/// that interval's piece, so an RK stage at the right edge sees the left
/// limit. The state is clamped into the device bounds after each full step.
/// Rows are kept every record_stride steps and at every stop.
///
/// On return the device holds the final state. A singular derivative or a
/// non-finite state aborts with ErrorKind::Singularity naming the step.
Trace integrate(MemristiveDevice& device, const Waveform& drive, const SimConfig& cfg,
                const IntegrateHooks& hooks = {});

struct HysteresisMetrics {
  double pinch_residual;  // amperes: |i_M| where v_M crosses zero
  double lobe_area;       // volt-amperes: sum of absolute lobe areas
};

/// Metrics over the last `period` seconds of the trace.
///
/// pinch_residual is the largest |i_M| among samples with |v_M| <= 1e-12 V and
/// among linear interpolations of i_M at each sign change of v_M. lobe_area
/// splits the i-v locus at the zero crossings and adds up the absolute
/// shoelace areas of the pieces, so the two counter-rotating lobes of a
/// pinched loop do not cancel.
///
/// Throws ErrorKind::Input when the trace spans less than one period.
HysteresisMetrics hysteresis_metrics(const Trace& trace, double period);

struct StairStep {
  std::size_t pulse_index;
  double state;  // state at the trailing edge
  double delta;  // change since the previous trailing edge (or trace start)
};

/// Per-pulse state increments sampled at each trailing edge.
std::vector<StairStep> staircase_profile(const Trace& trace, std::span<const double> trailing_edges);

/// Header `t,v_in,v_m,i_m,state,v_s,mode,bit_out`; shortest round-trip
/// formatting for every number.
void write_csv(const Trace& trace, std::ostream& os);
/// Throws ErrorKind::Io naming the path on failure.
void write_csv(const Trace& trace, const std::filesystem::path& path);

}  // namespace memcell
