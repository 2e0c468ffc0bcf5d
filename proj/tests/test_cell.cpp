#include <cmath>
#include <random>

#include "doctest.h"
#include "memcell/cell.hpp"
#include "test_util.hpp"

using namespace memcell;
using testing::error_kind;

namespace {

SimConfig sim(double dt = 1e-6) {
  SimConfig c;
  c.dt = dt;
  return c;
}

}  // namespace

TEST_CASE("mode detection around the 2.2 V threshold") {
  CHECK(detect_mode(3.32) == CellMode::Write);
  CHECK(detect_mode(2.0) == CellMode::Read);
  CHECK(detect_mode(2.2) == CellMode::Write);
  CHECK(detect_mode(std::nextafter(2.2, 0.0)) == CellMode::Read);
  CHECK(detect_mode(std::nextafter(2.2, 5.0)) == CellMode::Write);
}

TEST_CASE("source follower tap") {
  CHECK(source_follower_path(1.0).v_s == doctest::Approx(3.32).epsilon(0.01 / 3.32));
  CHECK(source_follower_path(-1.0).v_s == doctest::Approx(2.0));
  CHECK(source_follower_path(-1.0).gate_drive == -1.0);
  // Idle input: saturation with V_SG = V_S, root of V_S^2 + V_S - 9.75.
  const double idle = source_follower_path(0.0).v_s;
  CHECK(idle == doctest::Approx((-1.0 + std::sqrt(40.0)) / 2.0));
  CHECK(detect_mode(idle) == CellMode::Write);
  // Every admissible write level keeps the detector out of read mode.
  for (double v = 0.0; v <= 5.0; v += 0.01) CHECK(detect_mode(source_follower_path(v).v_s) == CellMode::Write);
}

TEST_CASE("fresh cell") {
  MemoryCell cell;
  CHECK(cell.state() == 0.0);
  CHECK(cell.last_bit() == 5.0);
  CHECK(cell.mode() == CellMode::Idle);
  CHECK(error_kind([] { MemoryCell c({}, 6.0); }) == ErrorKind::Range);
}

TEST_CASE("write trains") {
  MemoryCell zero({}, 1.0);
  zero.write(0.0, 1e-3, 1e-3, 5, sim());
  CHECK(zero.state() == 1.0);

  MemoryCell a, b;
  const Trace ta = a.write(1.5, 2e-3, 2e-3, 10, sim());
  b.write(1.0, 2e-3, 2e-3, 10, sim());
  CHECK(a.state() > b.state());
  // Golden totals from the closed-form flux oracle (see test_transient).
  CHECK(a.state() == doctest::Approx(2.3515301344262526).epsilon(1e-9));
  CHECK(b.state() == doctest::Approx(1.9024984394500786).epsilon(1e-9));
  for (const auto& r : ta.rows) {
    CHECK(r.mode != CellMode::Read);
    CHECK((r.v_in == 0.0) == (r.mode == CellMode::Idle));
  }
  CHECK(a.last_bit() == 5.0);

  CHECK(error_kind([&] { a.write(5.01, 1e-3, 1e-3, 1, sim()); }) == ErrorKind::Range);
  CHECK(error_kind([&] { a.write(-1.0, 1e-3, 1e-3, 1, sim()); }) == ErrorKind::Range);
}

TEST_CASE("a corrupted detector turns a write into a protocol violation") {
  CellParams p;
  p.mode_threshold = 4.0;  // idle V_S (2.66 V) now reads as a read request
  MemoryCell cell(p);
  CHECK(error_kind([&] { cell.write(1.0, 1e-3, 1e-3, 2, sim(1e-5)); }) == ErrorKind::Protocol);
  CHECK(cell.state() == 0.0);
}

TEST_CASE("write to a level") {
  MemoryCell cell;
  const SimConfig c = sim();
  cell.write_level(1.2, 5.0, c);
  CHECK(cell.state() >= 1.2);
  // One step at 5 V near 1.2 V moves the state by about 5 / (13k * 1u) * 1us.
  CHECK(cell.state() - 1.2 < 1e-3);
  cell.write_level(3.5, 5.0, c);
  CHECK(cell.state() == doctest::Approx(3.5).epsilon(1e-3));
  CHECK(error_kind([&] { cell.write_level(1.0, 5.0, c); }) == ErrorKind::Precondition);
  CHECK(error_kind([&] { cell.write_level(5.5, 5.0, c); }) == ErrorKind::Precondition);
}

TEST_CASE("read a low state") {
  MemoryCell cell({}, 1.2);
  const ReadOutcome r = cell.read({1.0, 2e-3}, sim());
  CHECK_FALSE(r.result.high);
  CHECK(r.result.bit == 0.0);
  CHECK(cell.last_bit() == 0.0);
  CHECK(r.result.sample_time == doctest::Approx(3e-3));
  CHECK(r.result.restored);
  CHECK(std::fabs(r.result.state_after - 1.2) <= 0.012);
  CHECK(r.result.peak_state > 1.2);

  // The trace only enters read mode during the negative half.
  for (const auto& row : r.trace.rows)
    if (row.mode == CellMode::Read) CHECK(row.v_in < 0.0);
  // Output stays at its power-on level until the strobe.
  for (const auto& row : r.trace.rows) CHECK(row.bit_out == (row.t < 3e-3 ? 5.0 : 0.0));
}

TEST_CASE("read a high state leaves the output high") {
  MemoryCell cell({}, 3.0);
  const ReadOutcome r = cell.read({1.0, 2e-3}, sim());
  CHECK(r.result.high);
  CHECK(r.result.bit == 5.0);
  for (const auto& row : r.trace.rows) CHECK(row.bit_out == 5.0);
  CHECK(r.result.restored);
}

TEST_CASE("read from a fresh cell") {
  MemoryCell cell;
  const ReadOutcome r = cell.read({1.0, 2e-3}, sim());
  CHECK_FALSE(r.result.high);
  CHECK(r.result.state_after == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("negative-half strobe ignores a positive-half excursion") {
  // 30 ms halves from 1.2 V: the positive half lifts the state past 2.5 V.
  MemoryCell cell({}, 1.2);
  const ReadOutcome r = cell.read({1.0, 30e-3}, sim());
  CHECK(r.result.peak_state > kBitThreshold);
  CHECK_FALSE(r.result.high);
  CHECK(r.result.restored);
}

TEST_CASE("read preconditions") {
  MemoryCell cell({}, 1.2);
  // 0.5 V never pulls V_S under 2.2 V (needs V_G below about -0.673 V).
  CHECK(error_kind([&] { cell.read({0.5, 1e-3}, sim()); }) == ErrorKind::Protocol);
  CHECK(error_kind([&] { cell.read({1.0, 0.0}, sim()); }) == ErrorKind::Range);
  CHECK(cell.state() == 1.2);
}

TEST_CASE("distortion probe") {
  MemoryCell cell({}, 1.2);
  const Trace zero = cell.read_distortion_probe(make_read_pulse({1.0, 5e-3}), sim());
  CHECK(zero.rows.back().state == doctest::Approx(1.2).epsilon(1e-9));

  const Trace skew = cell.read_distortion_probe(make_bipolar_pulse(1.0, 10e-3, 5e-3), sim());
  CHECK(std::fabs(skew.rows.back().state - 1.2) > 0.1);

  const Trace flat = cell.read_distortion_probe(Waveform({{5e-3, Constant{0.0}}, {5e-3, Constant{0.0}}}), sim());
  for (const auto& r : flat.rows) {
    CHECK(r.state == 1.2);
    CHECK(r.mode == CellMode::Idle);
  }

  // Neither the state nor the bit register move.
  CHECK(cell.state() == 1.2);
  CHECK(cell.last_bit() == 5.0);
}

TEST_CASE("property: reads are idempotent") {
  MemoryCell cell({}, 1.2);
  const double tol = cell.restoration_tolerance(1.2);
  CHECK(tol == doctest::Approx(0.012));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double before = cell.state();
    const ReadOutcome r = cell.read({1.0, 2e-3}, sim());
    REQUIRE_FALSE(r.result.high);
    worst = std::max(worst, std::fabs(cell.state() - before));
  }
  CHECK(worst <= tol);
  CHECK(std::fabs(cell.state() - 1.2) <= 100 * tol);
}

TEST_CASE("property: bit correctness outside the guard band") {
  constexpr double kGuard = 0.05;
  int checked = 0;
  for (int mv = 0; mv <= 5000; mv += 10) {
    const double s = mv / 1000.0;
    if (std::fabs(s - kBitThreshold) <= kGuard) continue;
    MemoryCell cell({}, s);
    const ReadOutcome r = cell.read({1.0, 2e-3}, sim(2e-6));
    REQUIRE_MESSAGE(r.result.high == (s > kBitThreshold), "state " << s);
    ++checked;
  }
  CHECK(checked > 480);
}

TEST_CASE("property: no enable switch needed") {
  // Random interleavings of unipolar writes and zero-average reads. Read mode
  // must appear only on negative read halves, and every read must see it.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> write_amp(0.0, 5.0);
  std::uniform_real_distribution<double> read_amp(1.0, 3.0);
  std::uniform_real_distribution<double> ms(0.2, 2.0);
  std::uniform_int_distribution<int> count(1, 3);
  std::bernoulli_distribution do_write(0.5);

  for (int trial = 0; trial < 10; ++trial) {
    MemoryCell cell;
    for (int op = 0; op < 12; ++op) {
      if (do_write(rng)) {
        const Trace t = cell.write(write_amp(rng) * 0.2, ms(rng) * 1e-3, ms(rng) * 1e-3, count(rng), sim(5e-6));
        for (const auto& r : t.rows) REQUIRE(r.mode != CellMode::Read);
      } else {
        const ReadOutcome r = cell.read({read_amp(rng), ms(rng) * 1e-3}, sim(5e-6));
        bool saw_read = false;
        for (const auto& row : r.trace.rows) {
          if (row.mode == CellMode::Read) {
            REQUIRE(row.v_in < 0.0);
            saw_read = true;
          }
          if (row.v_in < 0.0) REQUIRE(row.mode == CellMode::Read);
        }
        REQUIRE(saw_read);
        const double before = r.result.state_before;
        if (std::fabs(before - kBitThreshold) > 0.05) REQUIRE(r.result.high == (before > kBitThreshold));
      }
    }
  }
}
