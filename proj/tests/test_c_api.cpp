#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "memcell/memcell.h"

namespace fs = std::filesystem;

TEST_CASE("status strings and version") {
  CHECK(std::strcmp(memcell_version(), "1.0.0") == 0);
  CHECK(std::strcmp(memcell_status_string(MEMCELL_OK), "ok") == 0);
  CHECK(std::strcmp(memcell_status_string(MEMCELL_ERR_PROTOCOL), "protocol violation") == 0);
}

TEST_CASE("device laws through the C API") {
  double v = 0.0;
  REQUIRE(memcell_pmos_source_voltage(1.0, &v) == MEMCELL_OK);
  CHECK(std::fabs(v - 3.32) <= 0.01);
  REQUIRE(memcell_pmos_source_voltage(-1.0, &v) == MEMCELL_OK);
  CHECK(v == doctest::Approx(2.0));
  CHECK(memcell_pmos_source_voltage(NAN, &v) == MEMCELL_ERR_DOMAIN);
  CHECK(std::strlen(memcell_last_error()) > 0);
  CHECK(memcell_pmos_source_voltage(1.0, nullptr) == MEMCELL_ERR_INVALID_ARGUMENT);

  memcell_mode m;
  REQUIRE(memcell_detect_mode(2.2, &m) == MEMCELL_OK);
  CHECK(m == MEMCELL_MODE_WRITE);
  REQUIRE(memcell_detect_mode(2.0, &m) == MEMCELL_OK);
  CHECK(m == MEMCELL_MODE_READ);

  REQUIRE(memcell_emulator_memristance(1.2, &v) == MEMCELL_OK);
  CHECK(v == doctest::Approx(13e3));
  REQUIRE(memcell_emulator_state_derivative(1.2, 1.5, &v) == MEMCELL_OK);
  CHECK(v == doctest::Approx(115.38461538461538));
}

TEST_CASE("cell handle") {
  memcell_cell* c = nullptr;
  CHECK(memcell_cell_create(7.0, &c) == MEMCELL_ERR_RANGE);
  CHECK(c == nullptr);
  REQUIRE(memcell_cell_create(0.0, &c) == MEMCELL_OK);
  REQUIRE(c != nullptr);

  double bit = 0.0, s = -1.0;
  REQUIRE(memcell_cell_last_bit(c, &bit) == MEMCELL_OK);
  CHECK(bit == 5.0);
  REQUIRE(memcell_cell_write(c, 5.0, 5e-3, 1e-3, 3, 1e-6) == MEMCELL_OK);
  REQUIRE(memcell_cell_state(c, &s) == MEMCELL_OK);
  CHECK(s > 2.5);

  memcell_read_result r{};
  REQUIRE(memcell_cell_read(c, 1.0, 2e-3, 1e-6, &r) == MEMCELL_OK);
  CHECK(r.high == 1);
  CHECK(r.restored == 1);

  REQUIRE(memcell_cell_set_state(c, 1.2) == MEMCELL_OK);
  REQUIRE(memcell_cell_read(c, 1.0, 2e-3, 1e-6, &r) == MEMCELL_OK);
  CHECK(r.high == 0);
  CHECK(r.bit == 0.0);

  CHECK(memcell_cell_read(c, 0.5, 2e-3, 1e-6, &r) == MEMCELL_ERR_PROTOCOL);
  CHECK(memcell_cell_write(c, 6.0, 1e-3, 1e-3, 1, 1e-6) == MEMCELL_ERR_RANGE);
  CHECK(memcell_cell_write(c, 1.0, 1e-3, 1e-3, 1, 0.0) == MEMCELL_ERR_RANGE);
  CHECK(memcell_cell_set_state(c, -1.0) == MEMCELL_ERR_RANGE);
  CHECK(memcell_cell_state(nullptr, &s) == MEMCELL_ERR_INVALID_ARGUMENT);
  CHECK(memcell_cell_read(c, 1.0, 2e-3, 1e-6, nullptr) == MEMCELL_ERR_INVALID_ARGUMENT);
  memcell_cell_destroy(c);
  memcell_cell_destroy(nullptr);
}

TEST_CASE("scenario handle") {
  memcell_scenario* sc = nullptr;
  CHECK(memcell_scenario_create("erase", &sc) == MEMCELL_ERR_CONFIG);
  REQUIRE(memcell_scenario_create("program", &sc) == MEMCELL_OK);
  CHECK(std::strlen(memcell_scenario_report(sc)) == 0);

  REQUIRE(memcell_scenario_set_number(sc, "amplitude", 1.0) == MEMCELL_OK);
  REQUIRE(memcell_scenario_set_number(sc, "dt", 1e-5) == MEMCELL_OK);
  CHECK(memcell_scenario_set_string(sc, "scenario", "sweep") == MEMCELL_ERR_INVALID_ARGUMENT);
  REQUIRE(memcell_scenario_validate(sc) == MEMCELL_OK);

  REQUIRE(memcell_scenario_set_number(sc, "bogus", 1.0) == MEMCELL_OK);
  CHECK(memcell_scenario_validate(sc) == MEMCELL_ERR_CONFIG);
  CHECK(std::string(memcell_last_error()).find("bogus") != std::string::npos);
  memcell_scenario_destroy(sc);

  REQUIRE(memcell_scenario_create("sweep", &sc) == MEMCELL_OK);
  const double states[] = {1.0, 4.0};
  REQUIRE(memcell_scenario_set_numbers(sc, "states", states, 2) == MEMCELL_OK);
  const fs::path dir = fs::temp_directory_path() / "memcell_c_api_sweep";
  fs::remove_all(dir);
  int passed = 0;
  REQUIRE(memcell_scenario_run(sc, dir.string().c_str(), &passed) == MEMCELL_OK);
  CHECK(passed == 1);
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(std::string(memcell_scenario_summary_json(sc)).find("\"sweep\"") != std::string::npos);
  CHECK(std::strlen(memcell_scenario_report(sc)) > 0);
  memcell_scenario_destroy(sc);
  memcell_scenario_destroy(nullptr);
}

TEST_CASE("config files") {
  const fs::path p = fs::temp_directory_path() / "memcell_c_api_cfg.json";
  {
    std::ofstream os(p);
    os << R"({"scenario": "readwrite", "write_level": 3.5})";
  }
  memcell_scenario* sc = nullptr;
  REQUIRE(memcell_scenario_create("program", &sc) == MEMCELL_OK);
  CHECK(memcell_scenario_load_file(sc, p.string().c_str()) == MEMCELL_ERR_CONFIG);
  memcell_scenario_destroy(sc);

  REQUIRE(memcell_scenario_create("readwrite", &sc) == MEMCELL_OK);
  REQUIRE(memcell_scenario_load_file(sc, p.string().c_str()) == MEMCELL_OK);
  CHECK(memcell_scenario_validate(sc) == MEMCELL_OK);
  CHECK(memcell_scenario_load_file(sc, "/nonexistent/cfg.json") == MEMCELL_ERR_CONFIG);
  memcell_scenario_destroy(sc);

  {
    std::ofstream os(p);
    os << "{ not json";
  }
  REQUIRE(memcell_scenario_create("readwrite", &sc) == MEMCELL_OK);
  CHECK(memcell_scenario_load_file(sc, p.string().c_str()) == MEMCELL_ERR_CONFIG);
  memcell_scenario_destroy(sc);
}
