// memcell: run one memory-cell experiment and report its checks.
//
// Exit status: 0 when every check passes, 1 when a check fails or the
// simulation aborts, 2 on a configuration error.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "memcell/memcell.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

int exit_code_for(memcell_status s) {
  return s == MEMCELL_ERR_CONFIG || s == MEMCELL_ERR_INVALID_ARGUMENT ? kExitConfig : kExitFail;
}

int report_error(memcell_status s) {
  std::fprintf(stderr, "memcell: %s: %s\n", memcell_status_string(s), memcell_last_error());
  return exit_code_for(s);
}

struct ScenarioHandle {
  memcell_scenario* p = nullptr;
  ~ScenarioHandle() { memcell_scenario_destroy(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memristor-emulator memory cell simulator"};

  std::string scenario;
  std::string config;
  std::optional<double> dt, amplitude, t_on, t_off;
  std::optional<int> pulses;
  std::vector<double> freqs;
  std::string out;
  bool print_json = false;

  app.add_option("scenario", scenario, "hysteresis | program | readwrite | distortion | sweep")
      ->required()
      ->check(CLI::IsMember({"hysteresis", "program", "readwrite", "distortion", "sweep"}));
  app.add_option("--config", config, "JSON scenario file")->check(CLI::ExistingFile);
  app.add_option("--dt", dt, "Integration step in seconds");
  app.add_option("--out", out, "Output directory (default: $MEMCELL_OUT, then config, then .)");
  app.add_option("--freq", freqs, "Drive frequency in Hz (repeatable, hysteresis)");
  app.add_option("--amplitude", amplitude, "Amplitude of the scenario's main waveform in volts");
  app.add_option("--t-on", t_on, "Write pulse on-time in seconds (program)");
  app.add_option("--t-off", t_off, "Write pulse off-time in seconds (program)");
  app.add_option("--pulses", pulses, "Number of write pulses (program)");
  app.add_flag("--json", print_json, "Print the JSON summary instead of the text report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  ScenarioHandle sc;
  memcell_status s = memcell_scenario_create(scenario.c_str(), &sc.p);
  if (s != MEMCELL_OK) return report_error(s);

  if (!config.empty() && (s = memcell_scenario_load_file(sc.p, config.c_str())) != MEMCELL_OK)
    return report_error(s);

  auto set = [&](const char* key, const auto& value) {
    if (!value || s != MEMCELL_OK) return;
    s = memcell_scenario_set_number(sc.p, key, static_cast<double>(*value));
  };
  set("dt", dt);
  set("amplitude", amplitude);
  set("t_on", t_on);
  set("t_off", t_off);
  set("pulses", pulses);
  if (s == MEMCELL_OK && !freqs.empty()) s = memcell_scenario_set_numbers(sc.p, "freqs", freqs.data(), freqs.size());
  if (s != MEMCELL_OK) return report_error(s);

  if ((s = memcell_scenario_validate(sc.p)) != MEMCELL_OK) return report_error(s);

  // --out wins; otherwise MEMCELL_OUT, then the config's "out" key.
  const char* out_dir = nullptr;
  if (!out.empty()) {
    out_dir = out.c_str();
  } else if (const char* env = std::getenv("MEMCELL_OUT"); env != nullptr && *env != '\0') {
    out_dir = env;
  }

  int passed = 0;
  if ((s = memcell_scenario_run(sc.p, out_dir, &passed)) != MEMCELL_OK) return report_error(s);

  std::fputs(print_json ? memcell_scenario_summary_json(sc.p) : memcell_scenario_report(sc.p), stdout);
  if (print_json) std::fputc('\n', stdout);
  return passed ? kExitPass : kExitFail;
}
