#include "memcell/transient.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "memcell/error.hpp"

namespace memcell {

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::Range, "dt must be finite and > 0");
  if (!(t_end >= dt) || !std::isfinite(t_end)) fail(ErrorKind::Range, "t_end must be finite and >= dt");
  if (record_stride < 1) fail(ErrorKind::Range, "record_stride must be >= 1");
}

std::string_view to_string(CellMode m) noexcept {
  switch (m) {
    case CellMode::Idle: return "idle";
    case CellMode::Write: return "write";
    case CellMode::Read: return "read";
  }
  return "?";
}

std::string_view to_string(Method m) noexcept {
  return m == Method::Rk4 ? "rk4" : "euler";
}

// --- Trace ------------------------------------------------------------------

double Trace::state_at(double t) const {
  if (rows.empty() || t < rows.front().t || t > rows.back().t) {
    std::ostringstream os;
    os << "time " << t << " s outside the trace span";
    fail(ErrorKind::Input, os.str());
  }
  auto it = std::lower_bound(rows.begin(), rows.end(), t,
                             [](const TraceRow& r, double x) { return r.t < x; });
  if (it->t == t || it == rows.begin()) return it->state;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double u = (t - lo.t) / (hi.t - lo.t);
  return lo.state + u * (hi.state - lo.state);
}

void Trace::append(const Trace& other, double offset) {
  for (std::size_t i = 0; i < other.rows.size(); ++i) {
    TraceRow r = other.rows[i];
    r.t += offset;
    if (i == 0 && !rows.empty() && r.t <= rows.back().t) continue;
    rows.push_back(r);
  }
}

// --- Integration ------------------------------------------------------------

namespace {

std::vector<double> step_stops(const Waveform& drive, const SimConfig& cfg,
                               std::span<const double> extra) {
  std::vector<double> stops;
  for (double b : drive.breakpoints())
    if (b > 0.0 && b < cfg.t_end) stops.push_back(b);
  for (double b : extra)
    if (b > 0.0 && b < cfg.t_end) stops.push_back(b);
  stops.push_back(cfg.t_end);
  std::sort(stops.begin(), stops.end());

  // Near-coincident stops would create sliver steps; keep the earlier one
  // unless the later one is t_end.
  const double merge = cfg.dt * 1e-9;
  std::vector<double> out;
  double last = 0.0;
  for (double s : stops) {
    if (s - last <= merge) {
      if (s == cfg.t_end && !out.empty()) out.back() = s;
      continue;
    }
    out.push_back(s);
    last = s;
  }
  return out;
}

[[noreturn]] void singular_step(std::size_t step, double t, const std::string& why) {
  std::ostringstream os;
  os << "integration aborted at step " << step << " (t = " << t << " s): " << why;
  fail(ErrorKind::Singularity, os.str());
}

}  // namespace

Trace integrate(MemristiveDevice& device, const Waveform& drive, const SimConfig& cfg,
                const IntegrateHooks& hooks) {
  cfg.validate();

  const auto& pieces = drive.pieces();
  const std::vector<double> stops = step_stops(drive, cfg, hooks.extra_stops);

  Trace trace;
  trace.rows.reserve(static_cast<std::size_t>(cfg.t_end / cfg.dt) / cfg.record_stride + stops.size() + 2);

  double s = device.state();
  std::size_t step = 0;

  auto make_row = [&](double t) {
    TraceRow row;
    row.t = t;
    row.v_in = drive.value(t);
    row.v_m = row.v_in;
    row.i_m = device.current(s, row.v_m);
    row.state = s;
    return row;
  };

  {
    TraceRow row = make_row(0.0);
    if (hooks.observer) hooks.observer(row);
    trace.rows.push_back(row);
    if (hooks.stop_when && hooks.stop_when(row)) return trace;
  }

  double a = 0.0;
  for (double b : stops) {
    const std::size_t pi = drive.piece_index(a);
    auto v = [&](double t) { return pi < pieces.size() ? drive.value_in(pieces[pi], t) : 0.0; };

    const double span = b - a;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span / cfg.dt - 1e-9)));
    const double h = span / static_cast<double>(n);

    for (std::size_t i = 1; i <= n; ++i) {
      const double t0 = i == 1 ? a : a + static_cast<double>(i - 1) * h;
      const double t1 = i == n ? b : a + static_cast<double>(i) * h;
      const double hh = t1 - t0;
      ++step;

      try {
        if (cfg.method == Method::Rk4) {
          const double tm = t0 + 0.5 * hh;
          const double k1 = device.rate(s, v(t0), t0);
          const double k2 = device.rate(s + 0.5 * hh * k1, v(tm), tm);
          const double k3 = device.rate(s + 0.5 * hh * k2, v(tm), tm);
          const double k4 = device.rate(s + hh * k3, v(t1), t1);
          s = s + hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } else {
          s = s + hh * device.rate(s, v(t0), t0);
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Singularity) throw;
        singular_step(step, t0, e.what());
      }
      if (!std::isfinite(s)) singular_step(step, t0, "state is not finite");
      s = device.clamp(s);

      TraceRow row = make_row(t1);
      if (hooks.observer) hooks.observer(row);
      const bool stop = hooks.stop_when && hooks.stop_when(row);
      if (i == n || step % cfg.record_stride == 0 || stop) trace.rows.push_back(row);
      if (stop) {
        device.set_state(s);
        return trace;
      }
    }
    a = b;
  }

  device.set_state(s);
  return trace;
}

// --- Analysis ---------------------------------------------------------------

namespace {

struct Point {
  double v;
  double i;
};

double shoelace(const std::vector<Point>& poly) {
  if (poly.size() < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point& p = poly[k];
    const Point& q = poly[(k + 1) % poly.size()];
    acc += p.v * q.i - q.v * p.i;
  }
  return 0.5 * std::fabs(acc);
}

}  // namespace

HysteresisMetrics hysteresis_metrics(const Trace& trace, double period) {
  if (!(period > 0.0)) fail(ErrorKind::Input, "hysteresis period must be > 0");
  if (trace.rows.size() < 2 || trace.t_end() - trace.t_begin() < period * (1.0 - 1e-9))
    fail(ErrorKind::Input, "trace is shorter than one drive period");

  constexpr double kZeroVolts = 1e-12;
  const double t_from = trace.t_end() - period * (1.0 + 1e-9);
  auto first = std::lower_bound(trace.rows.begin(), trace.rows.end(), t_from,
                                [](const TraceRow& r, double x) { return r.t < x; });

  HysteresisMetrics m{0.0, 0.0};
  std::vector<Point> lobe;
  const TraceRow* prev = nullptr;
  for (auto it = first; it != trace.rows.end(); ++it) {
    const TraceRow& r = *it;
    if (std::fabs(r.v_m) <= kZeroVolts) {
      m.pinch_residual = std::max(m.pinch_residual, std::fabs(r.i_m));
      lobe.push_back({r.v_m, r.i_m});
      m.lobe_area += shoelace(lobe);
      lobe.assign(1, {r.v_m, r.i_m});
    } else if (prev != nullptr && prev->v_m * r.v_m < 0.0) {
      const double u = prev->v_m / (prev->v_m - r.v_m);
      const double i0 = prev->i_m + u * (r.i_m - prev->i_m);
      m.pinch_residual = std::max(m.pinch_residual, std::fabs(i0));
      lobe.push_back({0.0, i0});
      m.lobe_area += shoelace(lobe);
      lobe.assign(1, {0.0, i0});
      lobe.push_back({r.v_m, r.i_m});
    } else {
      lobe.push_back({r.v_m, r.i_m});
    }
    prev = &r;
  }
  m.lobe_area += shoelace(lobe);
  return m;
}

std::vector<StairStep> staircase_profile(const Trace& trace, std::span<const double> trailing_edges) {
  std::vector<StairStep> out;
  if (trace.empty()) return out;
  out.reserve(trailing_edges.size());
  double previous = trace.rows.front().state;
  for (std::size_t k = 0; k < trailing_edges.size(); ++k) {
    const double s = trace.state_at(trailing_edges[k]);
    out.push_back({k, s, s - previous});
    previous = s;
  }
  return out;
}

// --- CSV --------------------------------------------------------------------

namespace {

void put_number(std::ostream& os, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  os.write(buf, res.ptr - buf);
}

}  // namespace

void write_csv(const Trace& trace, std::ostream& os) {
  os << "t,v_in,v_m,i_m,state,v_s,mode,bit_out\n";
  for (const auto& r : trace.rows) {
    put_number(os, r.t);
    os << ',';
    put_number(os, r.v_in);
    os << ',';
    put_number(os, r.v_m);
    os << ',';
    put_number(os, r.i_m);
    os << ',';
    put_number(os, r.state);
    os << ',';
    put_number(os, r.v_s);
    os << ',' << to_string(r.mode) << ',';
    put_number(os, r.bit_out);
    os << '\n';
  }
}

void write_csv(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  write_csv(trace, os);
  os.flush();
  if (!os) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace memcell
