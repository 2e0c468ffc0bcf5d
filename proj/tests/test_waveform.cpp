#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "memcell/waveform.hpp"
#include "test_util.hpp"

using namespace memcell;
using testing::error_kind;

TEST_CASE("write pulse trains") {
  const Waveform a = make_write_pulse_train(1.5, 2e-3, 2e-3, 10);
  CHECK(a.duration() == doctest::Approx(40e-3));
  CHECK(a.pieces().size() == 20);
  CHECK(a.is_nonnegative());
  CHECK(a.value(0.0) == 1.5);
  CHECK(a.value(1.999e-3) == 1.5);
  CHECK(a.value(2e-3) == 0.0);  // right-continuous
  CHECK(a.value(4e-3) == 1.5);
  CHECK(a.max_abs() == 1.5);

  const Waveform d = make_write_pulse_train(1.0, 1e-3, 3e-3, 4);
  CHECK(d.value(0.5e-3) == 1.0);
  CHECK(d.value(1.5e-3) == 0.0);
  CHECK(time_average(d) == doctest::Approx(0.25));

  const Waveform z = make_write_pulse_train(0.0, 1e-3, 1e-3, 3);
  for (double t = 0.0; t < z.duration(); t += 1e-4) CHECK(z.value(t) == 0.0);
  CHECK(time_average(z) == 0.0);

  CHECK(error_kind([] { make_write_pulse_train(5.5, 1e-3, 1e-3, 1); }) == ErrorKind::Range);
  CHECK(error_kind([] { make_write_pulse_train(-0.1, 1e-3, 1e-3, 1); }) == ErrorKind::Range);
  CHECK(error_kind([] { make_write_pulse_train(1.0, 0.0, 1e-3, 1); }) == ErrorKind::Range);
  CHECK(error_kind([] { make_write_pulse_train(1.0, 1e-3, 1e-3, 0); }) == ErrorKind::Range);
}

TEST_CASE("read pulse is positive first and zero average") {
  const Waveform r = make_read_pulse({1.0, 5e-3});
  CHECK(r.value(0.0) == 1.0);
  CHECK(r.value(5e-3) == -1.0);
  CHECK(r.value(10e-3) == 0.0);
  CHECK(r.max_abs() == 1.0);
  CHECK(time_average(r) == 0.0);

  // 2:1 positive-heavy variant: (2A*h - A*h) / 3h = A/3
  const Waveform nz = make_bipolar_pulse(1.0, 10e-3, 5e-3);
  CHECK(time_average(nz) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("zero average is exact for arbitrary symmetric read pulses") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> amp(1e-3, 5.0);
  std::uniform_real_distribution<double> log_half(-6.0, -1.0);
  for (int i = 0; i < 2000; ++i) {
    const ReadPulseSpec s{amp(rng), std::pow(10.0, log_half(rng))};
    const Waveform w = make_read_pulse(s);
    REQUIRE(time_average(w) == 0.0);
    REQUIRE(w.max_abs() == s.amplitude);
  }
}

TEST_CASE("sine drive") {
  const Waveform s = make_sine(1.0, 100.0);
  CHECK(s.value(0.0) == 0.0);
  CHECK(s.value(2.5e-3) == doctest::Approx(1.0));
  CHECK(s.value(7.5e-3) == doctest::Approx(-1.0));
  CHECK(time_average(s) == 0.0);
  CHECK(time_average(make_sine(1.0, 400.0, 3)) == 0.0);

  // Half a period has the closed-form average 2A/pi.
  const Waveform half({{5e-3, Sine{1.0, 100.0, 0.0}}});
  CHECK(time_average(half) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("time average of mixed segments") {
  const Waveform c({{1.0, Constant{1.5}}});
  CHECK(time_average(c) == 1.5);
  const Waveform m({{1e-3, Constant{2.0}}, {3e-3, Constant{-1.0}}, {2e-3, Sine{1.0, 500.0, 0.0}}});
  CHECK(time_average(m) == doctest::Approx((2e-3 - 3e-3) / 6e-3));
}

TEST_CASE("breakpoints and piece lookup") {
  const Waveform w = make_write_pulse_train(1.0, 1e-3, 2e-3, 2);
  const auto bp = w.breakpoints();
  REQUIRE(bp.size() == 4);
  CHECK(bp[0] == doctest::Approx(1e-3));
  CHECK(bp[1] == doctest::Approx(3e-3));
  CHECK(bp[3] == w.duration());
  CHECK(w.piece_index(0.0) == 0);
  CHECK(w.piece_index(bp[0]) == 1);
  CHECK(w.piece_index(w.duration()) == w.pieces().size());
  CHECK(w.piece_index(-1.0) == w.pieces().size());
  CHECK(w.value(1.0) == 0.0);
  // Left limit through value_in at the end of an on-piece.
  CHECK(w.value_in(w.pieces()[0], bp[0]) == 1.0);
}

TEST_CASE("invalid waveforms") {
  CHECK(error_kind([] { Waveform({}); }) == ErrorKind::Range);
  CHECK(error_kind([] { Waveform({{0.0, Constant{1.0}}}); }) == ErrorKind::Range);
  CHECK(error_kind([] { Waveform({{1.0, Constant{1.0}}}, 0); }) == ErrorKind::Range);
  CHECK(error_kind([] { Waveform({{1.0, Sine{1.0, 0.0}}}); }) == ErrorKind::Range);
  CHECK(error_kind([] { make_read_pulse({1.0, 0.0}); }) == ErrorKind::Range);
  CHECK(error_kind([] { make_sine(1.0, -5.0); }) == ErrorKind::Range);
}
