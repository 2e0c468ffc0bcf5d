#include "memcell/cell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "memcell/error.hpp"

namespace memcell {

CellMode detect_mode(double v_s, double threshold) {
  return v_s >= threshold ? CellMode::Write : CellMode::Read;
}

SourceFollowerTap source_follower_path(double v_in, const PmosStageParams& p) {
  return {pmos_source_voltage(v_in, p), v_in};
}

void CellParams::validate() const {
  emulator.validate();
  pmos.validate();
  comparator.validate();
  if (!(mode_threshold > 0.0 && mode_threshold < pmos.vdd))
    fail(ErrorKind::Parameter, "mode threshold must lie inside (0, V_DD)");
  if (!(restore_rel_tol >= 0.0) || !(restore_abs_floor >= 0.0))
    fail(ErrorKind::Parameter, "restoration tolerances must be >= 0");
}

MemoryCell::MemoryCell(const CellParams& params, double initial_state)
    : params_(params),
      device_(params.emulator, initial_state),
      last_bit_(params.comparator.v_high) {
  params_.validate();
}

double MemoryCell::restoration_tolerance(double state_before) const noexcept {
  return std::max(params_.restore_rel_tol * std::fabs(state_before), params_.restore_abs_floor);
}

std::vector<double> MemoryCell::strobe_times(const Waveform& w) const {
  std::vector<double> out;
  for (const auto& piece : w.pieces()) {
    const auto* c = std::get_if<Constant>(&w.segments()[piece.segment].shape);
    if (c == nullptr || c->level == 0.0) continue;
    const double v_s = pmos_source_voltage(c->level, params_.pmos);
    if (detect_mode(v_s, params_.mode_threshold) == CellMode::Read)
      out.push_back(piece.start + 0.5 * (piece.end - piece.start));
  }
  return out;
}

MemoryCell::RunResult MemoryCell::run(EmulatorMemristor& device, const Waveform& w,
                                      const SimConfig& cfg, double latch, bool forbid_read,
                                      const StopPredicate& stop) const {
  const std::vector<double> strobes = strobe_times(w);
  std::size_t next_strobe = 0;
  CellMode mode = CellMode::Idle;

  const double rail_ref = attenuator_reference(params_.pmos.vdd);
  ComparatorParams first = params_.comparator;

  IntegrateHooks hooks;
  hooks.extra_stops = strobes;
  hooks.stop_when = stop;
  hooks.observer = [&](TraceRow& row) {
    const SourceFollowerTap tap = source_follower_path(row.v_in, params_.pmos);
    row.v_s = tap.v_s;
    row.mode = row.v_in == 0.0 ? CellMode::Idle : detect_mode(tap.v_s, params_.mode_threshold);
    if (forbid_read && row.mode == CellMode::Read) {
      std::ostringstream os;
      os << "protocol violation: detector reported read during write at t = " << row.t
         << " s (V_S = " << row.v_s << " V)";
      fail(ErrorKind::Protocol, os.str());
    }

    // First comparator: threshold on the + input, V_S on the - input, so it
    // goes high only for V_S below the threshold.
    const double enable = comparator_out(params_.mode_threshold, row.v_s, first.v_low, first);
    const double reference = enable == first.v_high ? rail_ref : 0.0;

    if (next_strobe < strobes.size() && row.t >= strobes[next_strobe]) {
      ++next_strobe;
      if (row.mode == CellMode::Read) latch = comparator_out(row.state, reference, latch, params_.comparator);
    }
    row.bit_out = latch;
    mode = row.mode;
  };

  Trace trace = integrate(device, w, cfg, hooks);
  return {std::move(trace), latch, mode};
}

Trace MemoryCell::write(double amplitude, double t_on, double t_off, int n, const SimConfig& cfg) {
  const Waveform w = make_write_pulse_train(amplitude, t_on, t_off, n);
  SimConfig c = cfg;
  c.t_end = w.duration();
  EmulatorMemristor work = device_;
  RunResult r = run(work, w, c, last_bit_, /*forbid_read=*/true);
  device_ = work;
  last_bit_ = r.latch;
  mode_ = r.final_mode;
  return std::move(r.trace);
}

Trace MemoryCell::write_level(double target, double amplitude, const SimConfig& cfg) {
  const double lo = device_.lower_bound();
  const double hi = device_.upper_bound();
  if (!(target >= lo && target <= hi)) {
    std::ostringstream os;
    os << "write level " << target << " V outside [" << lo << ", " << hi << "] V";
    fail(ErrorKind::Precondition, os.str());
  }
  if (params_.emulator.polarity != Polarity::Incremental)
    fail(ErrorKind::Precondition, "write_level needs an incremental emulator");
  if (target < device_.state())
    fail(ErrorKind::Precondition, "a unipolar write cannot lower the stored state");
  if (!(amplitude > 0.0)) fail(ErrorKind::Range, "write_level amplitude must be > 0");

  // Upper bound on the time needed: the slowest rate occurs at the largest
  // memristance.
  const double m_max = emulator_memristance(hi, params_.emulator);
  const double hold = (target - device_.state()) * m_max * params_.emulator.capacitance / amplitude;
  const double on_time = std::max(hold * 1.01, 2.0 * cfg.dt);

  const Waveform w = make_write_pulse_train(amplitude, on_time, cfg.dt, 1);
  SimConfig c = cfg;
  c.t_end = w.duration();
  EmulatorMemristor work = device_;
  RunResult r = run(work, w, c, last_bit_, /*forbid_read=*/true,
                    [target](const TraceRow& row) { return row.state >= target; });
  device_ = work;
  last_bit_ = r.latch;
  mode_ = CellMode::Idle;
  return std::move(r.trace);
}

ReadOutcome MemoryCell::read(const ReadPulseSpec& pulse, const SimConfig& cfg) {
  const Waveform w = make_read_pulse(pulse);
  const double avg = time_average(w);
  if (avg != 0.0) {
    std::ostringstream os;
    os << "read pulse average is " << avg << " V, not zero";
    fail(ErrorKind::Precondition, os.str());
  }
  const std::vector<double> strobes = strobe_times(w);
  if (strobes.empty()) {
    std::ostringstream os;
    os << "protocol violation: a " << pulse.amplitude
       << " V read pulse never pulls V_S below the mode threshold";
    fail(ErrorKind::Protocol, os.str());
  }

  SimConfig c = cfg;
  c.t_end = w.duration();
  EmulatorMemristor work = device_;
  ReadOutcome out;
  out.result.state_before = device_.state();
  RunResult r = run(work, w, c, last_bit_, /*forbid_read=*/false);

  out.result.sample_time = strobes.front();
  out.result.bit = r.latch;
  out.result.high = r.latch == params_.comparator.v_high;
  out.result.state_after = work.state();
  out.result.peak_state = out.result.state_before;
  for (const auto& row : r.trace.rows) out.result.peak_state = std::max(out.result.peak_state, row.state);
  out.result.restored = std::fabs(out.result.state_after - out.result.state_before) <=
                        restoration_tolerance(out.result.state_before);

  device_ = work;
  last_bit_ = r.latch;
  mode_ = r.final_mode;
  out.trace = std::move(r.trace);
  return out;
}

Trace MemoryCell::read_distortion_probe(const Waveform& pulse, const SimConfig& cfg) const {
  SimConfig c = cfg;
  c.t_end = std::max(pulse.duration(), cfg.dt);
  EmulatorMemristor work = device_;
  return run(work, pulse, c, last_bit_, /*forbid_read=*/false).trace;
}

}  // namespace memcell
