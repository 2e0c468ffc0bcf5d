#pragma once

#include <memory>

namespace memcell {

// ---------------------------------------------------------------------------
// Memristive device contract
// ---------------------------------------------------------------------------

/// A first-order, voltage-driven memristive system:
///
///   d(state)/dt = f(state, v_M, t)
///   i_M         = g(state, v_M, t) * v_M
///
/// The state lives in a closed interval [lower_bound, upper_bound]. The
/// integrator clamps into it after every step, and rate() zeroes the
/// derivative when it points outward at a bound.
class MemristiveDevice {
 public:
  virtual ~MemristiveDevice() = default;

  double state() const noexcept { return state_; }
  /// Throws ErrorKind::Range if `s` lies outside the device bounds.
  void set_state(double s);

  virtual double lower_bound() const noexcept = 0;
  virtual double upper_bound() const noexcept = 0;

  /// Resistance seen at the terminals for the given state.
  virtual double memristance(double s) const = 0;

  /// Bound-aware state derivative. The law is evaluated at the clamped
  /// state, so intermediate RK stages that overshoot a bound stay defined.
  double rate(double s, double v_m, double t) const;

  /// Terminal current; exactly zero when v_m is zero.
  double current(double s, double v_m) const;

  double clamp(double s) const noexcept;

  virtual std::unique_ptr<MemristiveDevice> clone() const = 0;

 protected:
  explicit MemristiveDevice(double initial) : state_(initial) {}
  MemristiveDevice(const MemristiveDevice&) = default;
  MemristiveDevice& operator=(const MemristiveDevice&) = default;

  virtual double raw_rate(double s, double v_m, double t) const = 0;

 private:
  double state_;
};

// ---------------------------------------------------------------------------
// Linear ionic-drift memristor
// ---------------------------------------------------------------------------

struct LinearMemristorParams {
  double r_on = 100.0;        // ohms, doped region
  double r_off = 16.0e3;      // ohms, undoped region
  double thickness = 10e-9;   // meters (D)
  double mobility = 1e-14;    // m^2 V^-1 s^-1 (mu_v)

  /// Throws ErrorKind::Parameter unless 0 < r_on < r_off, thickness > 0 and
  /// mobility > 0.
  void validate() const;
};

/// R_ON * w/D + R_OFF * (1 - w/D). Throws ErrorKind::Domain when w is outside
/// [0, D]; the integrator never produces such a w, so hitting this is a bug.
double linear_memristance(double w, const LinearMemristorParams& p);

/// mu_v * R_ON / D * i_M.
double linear_state_derivative(double w, double i_m, const LinearMemristorParams& p);

class LinearMemristor final : public MemristiveDevice {
 public:
  explicit LinearMemristor(const LinearMemristorParams& p = {}, double w0 = 0.0);

  const LinearMemristorParams& params() const noexcept { return params_; }

  double lower_bound() const noexcept override { return 0.0; }
  double upper_bound() const noexcept override { return params_.thickness; }
  double memristance(double w) const override;
  std::unique_ptr<MemristiveDevice> clone() const override;

 protected:
  double raw_rate(double w, double v_m, double t) const override;

 private:
  LinearMemristorParams params_;
};

// ---------------------------------------------------------------------------
// Capacitor-state memristor emulator
// ---------------------------------------------------------------------------

enum class Polarity { Incremental, Decremental };

/// Behavioral emulator: the state is the voltage on an integrating
/// capacitor, and the memristance is an affine function of it,
/// M(v_C) = R0 +/- k * v_C. The capacitor integrates the memristor current.
struct EmulatorParams {
  double r0 = 1.0e3;           // ohms
  double gain = 10.0e3;        // ohms per volt (k)
  double capacitance = 1e-6;   // farads
  Polarity polarity = Polarity::Incremental;
  double vc_min = 0.0;         // volts
  double vc_max = 5.0;         // volts

  /// Throws ErrorKind::Parameter on non-positive r0/gain/capacitance, an
  /// empty state range, or a memristance that is not strictly positive over
  /// the whole range.
  void validate() const;
};

/// R0 + k*v_C (incremental) or R0 - k*v_C (decremental). Throws
/// ErrorKind::Parameter if the result is not strictly positive.
double emulator_memristance(double v_c, const EmulatorParams& p);

/// v_M / (M(v_C) * C). Throws ErrorKind::Singularity if M(v_C) <= 0.
double emulator_state_derivative(double v_c, double v_m, const EmulatorParams& p);

class EmulatorMemristor final : public MemristiveDevice {
 public:
  explicit EmulatorMemristor(const EmulatorParams& p = {}, double vc0 = 0.0);

  const EmulatorParams& params() const noexcept { return params_; }

  double lower_bound() const noexcept override { return params_.vc_min; }
  double upper_bound() const noexcept override { return params_.vc_max; }
  double memristance(double v_c) const override;
  std::unique_ptr<MemristiveDevice> clone() const override;

 protected:
  double raw_rate(double v_c, double v_m, double t) const override;

 private:
  EmulatorParams params_;
};

// ---------------------------------------------------------------------------
// PMOS detector stage
// ---------------------------------------------------------------------------

/// Square-law PMOS with its source tied to V_DD through R_load, drain at
/// ground and the cell input on the gate. Channel-length modulation is
/// neglected.
struct PmosStageParams {
  double threshold = -0.5;   // V_t, volts (negative for PMOS)
  double k = 1e-3;           // device constant, A/V^2
  double vdd = 5.0;          // volts
  double r_load = 1.0e3;     // ohms

  /// Device constant given in mA/V^2.
  static PmosStageParams from_milliamps(double k_ma_per_v2);

  void validate() const;
};

enum class PmosRegion { Cutoff, Saturation, Triode };

struct PmosOperatingPoint {
  double v_s;
  PmosRegion region;
};

/// Solves (V_DD - V_S) / R_load = I_D(V_S) with the square-law drain current.
/// Both the saturation and triode quadratics are solved; the root that
/// satisfies its own region inequality is kept, saturation winning at the
/// boundary. Throws ErrorKind::Model when no root lands in [0, V_DD].
PmosOperatingPoint solve_pmos_stage(double v_g, const PmosStageParams& p = {});

inline double pmos_source_voltage(double v_g, const PmosStageParams& p = {}) {
  return solve_pmos_stage(v_g, p).v_s;
}

// ---------------------------------------------------------------------------
// Comparator and attenuator
// ---------------------------------------------------------------------------

struct ComparatorParams {
  double v_high = 5.0;
  double v_low = 0.0;
  double tie_epsilon = 1e-6;

  void validate() const;
};

/// Ideal high-gain comparator. Inside the +/- tie_epsilon band the previous
/// output is held, so the result is always exactly v_high or v_low.
double comparator_out(double v_plus, double v_minus, double previous,
                      const ComparatorParams& p = {});

/// Two equal resistors: v_in / 2.
double attenuator_reference(double v_in);

}  // namespace memcell
