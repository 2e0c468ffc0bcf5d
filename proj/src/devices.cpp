#include "memcell/devices.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "memcell/error.hpp"

namespace memcell {

namespace {

std::string fmt_value(const char* name, double v) {
  std::ostringstream os;
  os << name << " = " << v;
  return os.str();
}

}  // namespace

// --- MemristiveDevice -------------------------------------------------------

void MemristiveDevice::set_state(double s) {
  if (!std::isfinite(s) || s < lower_bound() || s > upper_bound()) {
    std::ostringstream os;
    os << "device state " << s << " outside [" << lower_bound() << ", "
       << upper_bound() << "]";
    fail(ErrorKind::Range, os.str());
  }
  state_ = s;
}

double MemristiveDevice::clamp(double s) const noexcept {
  return std::clamp(s, lower_bound(), upper_bound());
}

double MemristiveDevice::rate(double s, double v_m, double t) const {
  const double inside = clamp(s);
  const double r = raw_rate(inside, v_m, t);
  if (inside >= upper_bound() && r > 0.0) return 0.0;
  if (inside <= lower_bound() && r < 0.0) return 0.0;
  return r;
}

double MemristiveDevice::current(double s, double v_m) const {
  if (v_m == 0.0) return 0.0;
  return v_m / memristance(clamp(s));
}

// --- Linear memristor -------------------------------------------------------

void LinearMemristorParams::validate() const {
  if (!(r_on > 0.0) || !(r_off > r_on))
    fail(ErrorKind::Parameter, "linear memristor needs 0 < R_ON < R_OFF");
  if (!(thickness > 0.0)) fail(ErrorKind::Parameter, fmt_value("D", thickness) + " must be > 0");
  if (!(mobility > 0.0)) fail(ErrorKind::Parameter, fmt_value("mu_v", mobility) + " must be > 0");
}

double linear_memristance(double w, const LinearMemristorParams& p) {
  if (!(w >= 0.0 && w <= p.thickness))
    fail(ErrorKind::Domain, fmt_value("w", w) + " outside [0, D]");
  const double x = w / p.thickness;
  return p.r_on * x + p.r_off * (1.0 - x);
}

double linear_state_derivative(double /*w*/, double i_m, const LinearMemristorParams& p) {
  return p.mobility * (p.r_on / p.thickness) * i_m;
}

LinearMemristor::LinearMemristor(const LinearMemristorParams& p, double w0)
    : MemristiveDevice(0.0), params_(p) {
  params_.validate();
  set_state(w0);
}

double LinearMemristor::memristance(double w) const { return linear_memristance(w, params_); }

double LinearMemristor::raw_rate(double w, double v_m, double /*t*/) const {
  return linear_state_derivative(w, current(w, v_m), params_);
}

std::unique_ptr<MemristiveDevice> LinearMemristor::clone() const {
  return std::make_unique<LinearMemristor>(*this);
}

// --- Emulator ---------------------------------------------------------------

void EmulatorParams::validate() const {
  if (!(r0 > 0.0)) fail(ErrorKind::Parameter, fmt_value("R0", r0) + " must be > 0");
  if (!(gain > 0.0)) fail(ErrorKind::Parameter, fmt_value("k", gain) + " must be > 0");
  if (!(capacitance > 0.0)) fail(ErrorKind::Parameter, fmt_value("C", capacitance) + " must be > 0");
  if (!(vc_min < vc_max)) fail(ErrorKind::Parameter, "emulator needs vC_min < vC_max");
  // Affine in v_C, so checking both ends covers the interval.
  const double sign = polarity == Polarity::Incremental ? 1.0 : -1.0;
  if (!(r0 + sign * gain * vc_min > 0.0) || !(r0 + sign * gain * vc_max > 0.0))
    fail(ErrorKind::Parameter, "emulator memristance not positive over [vC_min, vC_max]");
}

double emulator_memristance(double v_c, const EmulatorParams& p) {
  const double sign = p.polarity == Polarity::Incremental ? 1.0 : -1.0;
  const double m = p.r0 + sign * p.gain * v_c;
  if (!(m > 0.0)) fail(ErrorKind::Parameter, fmt_value("emulator memristance", m) + " is not positive");
  return m;
}

double emulator_state_derivative(double v_c, double v_m, const EmulatorParams& p) {
  const double sign = p.polarity == Polarity::Incremental ? 1.0 : -1.0;
  const double m = p.r0 + sign * p.gain * v_c;
  if (!(m > 0.0))
    fail(ErrorKind::Singularity, fmt_value("memristance", m) + " at " + fmt_value("v_C", v_c));
  if (v_m == 0.0) return 0.0;
  return v_m / (m * p.capacitance);
}

EmulatorMemristor::EmulatorMemristor(const EmulatorParams& p, double vc0)
    : MemristiveDevice(p.vc_min), params_(p) {
  params_.validate();
  set_state(vc0);
}

double EmulatorMemristor::memristance(double v_c) const { return emulator_memristance(v_c, params_); }

double EmulatorMemristor::raw_rate(double v_c, double v_m, double /*t*/) const {
  return emulator_state_derivative(v_c, v_m, params_);
}

std::unique_ptr<MemristiveDevice> EmulatorMemristor::clone() const {
  return std::make_unique<EmulatorMemristor>(*this);
}

// --- PMOS stage -------------------------------------------------------------

PmosStageParams PmosStageParams::from_milliamps(double k_ma_per_v2) {
  PmosStageParams p;
  p.k = k_ma_per_v2 * 1e-3;
  return p;
}

void PmosStageParams::validate() const {
  if (!(threshold < 0.0)) fail(ErrorKind::Parameter, fmt_value("V_t", threshold) + " must be < 0 for PMOS");
  if (!(k > 0.0)) fail(ErrorKind::Parameter, fmt_value("K", k) + " must be > 0");
  if (!(r_load > 0.0)) fail(ErrorKind::Parameter, fmt_value("R_load", r_load) + " must be > 0");
  if (!(vdd > 0.0)) fail(ErrorKind::Parameter, fmt_value("V_DD", vdd) + " must be > 0");
}

PmosOperatingPoint solve_pmos_stage(double v_g, const PmosStageParams& p) {
  p.validate();
  if (!std::isfinite(v_g)) fail(ErrorKind::Domain, "gate voltage is not finite");

  const double vt = std::fabs(p.threshold);
  const double rk = p.r_load * p.k;
  // Region inequalities are compared with a little slack so that the exact
  // boundary (where both quadratics share a root) resolves to saturation.
  constexpr double kSlack = 1e-12;

  // Source at the rail still cannot turn the device on.
  if (p.vdd - v_g <= vt) return {p.vdd, PmosRegion::Cutoff};

  const double a = v_g + vt;  // V_S at which the overdrive is zero

  // Saturation: V_DD - V_S = rk/2 * (V_S - a)^2 with V_S >= a.
  std::optional<double> sat;
  {
    const double u = (-1.0 + std::sqrt(1.0 + 2.0 * rk * (p.vdd - a))) / rk;
    const double v_s = a + u;
    const double v_sd = v_s;
    const double overdrive = v_s - v_g - vt;
    if (u >= 0.0 && v_sd >= overdrive - kSlack) sat = v_s;
  }
  if (sat && *sat >= 0.0 && *sat <= p.vdd) return {*sat, PmosRegion::Saturation};

  // Triode: V_DD - V_S = rk * ((V_S - a) * V_S - V_S^2 / 2).
  std::optional<double> tri;
  {
    const double b = 1.0 - rk * a;
    const double disc = b * b + 2.0 * rk * p.vdd;
    if (disc >= 0.0) {
      const double v_s = (-b + std::sqrt(disc)) / rk;
      const double v_sd = v_s;
      const double overdrive = v_s - v_g - vt;
      if (overdrive > 0.0 && v_sd < overdrive + kSlack) tri = v_s;
    }
  }
  if (tri && *tri >= 0.0 && *tri <= p.vdd) return {*tri, PmosRegion::Triode};

  fail(ErrorKind::Model, fmt_value("no PMOS operating point in [0, V_DD] for V_G", v_g));
}

// --- Comparator / attenuator ------------------------------------------------

void ComparatorParams::validate() const {
  if (!(v_low < v_high)) fail(ErrorKind::Parameter, "comparator needs v_low < v_high");
  if (!(tie_epsilon >= 0.0)) fail(ErrorKind::Parameter, "comparator tie_epsilon must be >= 0");
}

double comparator_out(double v_plus, double v_minus, double previous, const ComparatorParams& p) {
  const double diff = v_plus - v_minus;
  if (diff > p.tie_epsilon) return p.v_high;
  if (diff < -p.tie_epsilon) return p.v_low;
  // Snap whatever was held onto a rail.
  return previous >= 0.5 * (p.v_high + p.v_low) ? p.v_high : p.v_low;
}

double attenuator_reference(double v_in) {
  if (v_in < 0.0) fail(ErrorKind::Domain, fmt_value("attenuator input", v_in) + " is negative");
  return 0.5 * v_in;
}

}  // namespace memcell
