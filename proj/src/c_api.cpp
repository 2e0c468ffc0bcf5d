#include "memcell/memcell.h"

#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "json.hpp"
#include "memcell/cell.hpp"
#include "memcell/error.hpp"
#include "memcell/scenario.hpp"

struct memcell_cell {
  memcell::MemoryCell cell;
};

struct memcell_scenario {
  memcell::ScenarioKind kind;
  nlohmann::json config;
  std::string report;
  std::string summary;
};

namespace {

thread_local std::string g_last_error;

memcell_status status_of(memcell::ErrorKind k) {
  using memcell::ErrorKind;
  switch (k) {
    case ErrorKind::Domain: return MEMCELL_ERR_DOMAIN;
    case ErrorKind::Range: return MEMCELL_ERR_RANGE;
    case ErrorKind::Parameter: return MEMCELL_ERR_PARAMETER;
    case ErrorKind::Model: return MEMCELL_ERR_MODEL;
    case ErrorKind::Singularity: return MEMCELL_ERR_SINGULARITY;
    case ErrorKind::Protocol: return MEMCELL_ERR_PROTOCOL;
    case ErrorKind::Precondition: return MEMCELL_ERR_PRECONDITION;
    case ErrorKind::Input: return MEMCELL_ERR_INPUT;
    case ErrorKind::Config: return MEMCELL_ERR_CONFIG;
    case ErrorKind::Io: return MEMCELL_ERR_IO;
  }
  return MEMCELL_ERR_INTERNAL;
}

memcell_status set_error(memcell_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename F>
memcell_status guarded(F&& f) noexcept {
  try {
    g_last_error.clear();
    f();
    return MEMCELL_OK;
  } catch (const memcell::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(MEMCELL_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MEMCELL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(MEMCELL_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(MEMCELL_ERR_INTERNAL, "unknown error");
  }
}

#define MEMCELL_REQUIRE(cond, what) \
  do {                              \
    if (!(cond)) return set_error(MEMCELL_ERR_INVALID_ARGUMENT, what); \
  } while (0)

memcell::SimConfig sim_with_dt(double dt) {
  memcell::SimConfig c;
  c.dt = dt;
  return c;
}

}  // namespace

extern "C" {

const char* memcell_version(void) { return "1.0.0"; }

const char* memcell_status_string(memcell_status status) {
  switch (status) {
    case MEMCELL_OK: return "ok";
    case MEMCELL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MEMCELL_ERR_DOMAIN: return "domain error";
    case MEMCELL_ERR_RANGE: return "range error";
    case MEMCELL_ERR_PARAMETER: return "parameter error";
    case MEMCELL_ERR_MODEL: return "model error";
    case MEMCELL_ERR_SINGULARITY: return "singularity";
    case MEMCELL_ERR_PROTOCOL: return "protocol violation";
    case MEMCELL_ERR_PRECONDITION: return "precondition failed";
    case MEMCELL_ERR_INPUT: return "input error";
    case MEMCELL_ERR_CONFIG: return "config error";
    case MEMCELL_ERR_IO: return "i/o error";
    case MEMCELL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* memcell_last_error(void) { return g_last_error.c_str(); }

memcell_status memcell_pmos_source_voltage(double v_g, double* v_s) {
  MEMCELL_REQUIRE(v_s != nullptr, "v_s is NULL");
  return guarded([&] { *v_s = memcell::pmos_source_voltage(v_g); });
}

memcell_status memcell_detect_mode(double v_s, memcell_mode* mode) {
  MEMCELL_REQUIRE(mode != nullptr, "mode is NULL");
  return guarded([&] {
    *mode = memcell::detect_mode(v_s) == memcell::CellMode::Read ? MEMCELL_MODE_READ : MEMCELL_MODE_WRITE;
  });
}

memcell_status memcell_emulator_memristance(double v_c, double* ohms) {
  MEMCELL_REQUIRE(ohms != nullptr, "ohms is NULL");
  return guarded([&] { *ohms = memcell::emulator_memristance(v_c, memcell::EmulatorParams{}); });
}

memcell_status memcell_emulator_state_derivative(double v_c, double v_m, double* volts_per_second) {
  MEMCELL_REQUIRE(volts_per_second != nullptr, "volts_per_second is NULL");
  return guarded(
      [&] { *volts_per_second = memcell::emulator_state_derivative(v_c, v_m, memcell::EmulatorParams{}); });
}

memcell_status memcell_cell_create(double initial_state, memcell_cell** out) {
  MEMCELL_REQUIRE(out != nullptr, "out is NULL");
  *out = nullptr;
  return guarded([&] { *out = new memcell_cell{memcell::MemoryCell({}, initial_state)}; });
}

void memcell_cell_destroy(memcell_cell* cell) { delete cell; }

memcell_status memcell_cell_state(const memcell_cell* cell, double* state) {
  MEMCELL_REQUIRE(cell != nullptr && state != nullptr, "NULL argument");
  *state = cell->cell.state();
  return MEMCELL_OK;
}

memcell_status memcell_cell_set_state(memcell_cell* cell, double state) {
  MEMCELL_REQUIRE(cell != nullptr, "cell is NULL");
  return guarded([&] { cell->cell.set_state(state); });
}

memcell_status memcell_cell_last_bit(const memcell_cell* cell, double* bit) {
  MEMCELL_REQUIRE(cell != nullptr && bit != nullptr, "NULL argument");
  *bit = cell->cell.last_bit();
  return MEMCELL_OK;
}

memcell_status memcell_cell_write(memcell_cell* cell, double amplitude, double t_on, double t_off, int n,
                                  double dt) {
  MEMCELL_REQUIRE(cell != nullptr, "cell is NULL");
  return guarded([&] { cell->cell.write(amplitude, t_on, t_off, n, sim_with_dt(dt)); });
}

memcell_status memcell_cell_read(memcell_cell* cell, double amplitude, double half_period, double dt,
                                 memcell_read_result* result) {
  MEMCELL_REQUIRE(cell != nullptr && result != nullptr, "NULL argument");
  return guarded([&] {
    const auto r = cell->cell.read({amplitude, half_period}, sim_with_dt(dt)).result;
    result->high = r.high ? 1 : 0;
    result->bit = r.bit;
    result->sample_time = r.sample_time;
    result->state_before = r.state_before;
    result->state_after = r.state_after;
    result->peak_state = r.peak_state;
    result->restored = r.restored ? 1 : 0;
  });
}

memcell_status memcell_scenario_create(const char* kind, memcell_scenario** out) {
  MEMCELL_REQUIRE(kind != nullptr && out != nullptr, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    const auto k = memcell::scenario_kind_from_string(kind);
    *out = new memcell_scenario{k, nlohmann::json{{"scenario", kind}}, {}, {}};
  });
}

memcell_status memcell_scenario_load_file(memcell_scenario* sc, const char* path) {
  MEMCELL_REQUIRE(sc != nullptr && path != nullptr, "NULL argument");
  return guarded([&] {
    std::ifstream is(path);
    if (!is) memcell::fail(memcell::ErrorKind::Config, std::string("cannot open config ") + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
      memcell::fail(memcell::ErrorKind::Config, std::string(path) + ": " + e.what());
    }
    if (!j.is_object()) memcell::fail(memcell::ErrorKind::Config, std::string(path) + ": not a JSON object");
    if (j.contains("scenario") &&
        (!j["scenario"].is_string() || j["scenario"].get<std::string>() != memcell::to_string(sc->kind)))
      memcell::fail(memcell::ErrorKind::Config, std::string(path) + ": scenario does not match '" +
                                                    std::string(memcell::to_string(sc->kind)) + "'");
    for (const auto& [key, v] : j.items()) sc->config[key] = v;
  });
}

memcell_status memcell_scenario_set_number(memcell_scenario* sc, const char* key, double value) {
  MEMCELL_REQUIRE(sc != nullptr && key != nullptr, "NULL argument");
  MEMCELL_REQUIRE(std::string(key) != "scenario", "the scenario kind is fixed at creation");
  return guarded([&] { sc->config[key] = value; });
}

memcell_status memcell_scenario_set_string(memcell_scenario* sc, const char* key, const char* value) {
  MEMCELL_REQUIRE(sc != nullptr && key != nullptr && value != nullptr, "NULL argument");
  MEMCELL_REQUIRE(std::string(key) != "scenario", "the scenario kind is fixed at creation");
  return guarded([&] { sc->config[key] = value; });
}

memcell_status memcell_scenario_set_numbers(memcell_scenario* sc, const char* key, const double* values,
                                            size_t count) {
  MEMCELL_REQUIRE(sc != nullptr && key != nullptr, "NULL argument");
  MEMCELL_REQUIRE(values != nullptr || count == 0, "values is NULL");
  return guarded([&] {
    auto arr = nlohmann::json::array();
    for (size_t i = 0; i < count; ++i) arr.push_back(values[i]);
    sc->config[key] = std::move(arr);
  });
}

memcell_status memcell_scenario_validate(memcell_scenario* sc) {
  MEMCELL_REQUIRE(sc != nullptr, "scenario is NULL");
  return guarded([&] { (void)memcell::parse_scenario(sc->config); });
}

memcell_status memcell_scenario_run(memcell_scenario* sc, const char* out_dir, int* passed) {
  MEMCELL_REQUIRE(sc != nullptr && passed != nullptr, "NULL argument");
  *passed = 0;
  return guarded([&] {
    const auto cfg = memcell::parse_scenario(sc->config);
    std::string dir = out_dir != nullptr ? out_dir : cfg.out_dir;
    if (dir.empty()) dir = ".";
    const auto summary = memcell::run_scenario(cfg, dir);
    sc->report = summary.report();
    sc->summary = summary.to_json().dump(2);
    *passed = summary.all_passed() ? 1 : 0;
  });
}

const char* memcell_scenario_report(const memcell_scenario* sc) { return sc ? sc->report.c_str() : ""; }

const char* memcell_scenario_summary_json(const memcell_scenario* sc) { return sc ? sc->summary.c_str() : ""; }

void memcell_scenario_destroy(memcell_scenario* sc) { delete sc; }

}  // extern "C"
