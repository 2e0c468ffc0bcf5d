#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "memcell/cell.hpp"
#include "memcell/transient.hpp"
#include "memcell/waveform.hpp"

namespace memcell {

enum class ScenarioKind { Hysteresis, Program, ReadWrite, Distortion, Sweep };

std::string_view to_string(ScenarioKind k) noexcept;
/// Throws ErrorKind::Config on an unknown name.
ScenarioKind scenario_kind_from_string(std::string_view name);

struct NamedWaveform {
  std::string name;
  Waveform wave;
};

/// One experiment, fully validated. Keys mirror the flat JSON config:
///
///   common      scenario dt method record_stride out initial_state
///               R0 k C polarity vC_min vC_max V_t K V_DD R_load tie_epsilon
///   hysteresis  freqs amplitude periods
///   program     amplitude t_on t_off pulses
///   readwrite   write_level write_amplitude amplitude read_half_period
///   distortion  amplitude read_half_period variants
///   sweep       amplitude read_half_period states
///
/// `amplitude` is the drive of the scenario's main waveform: the sine, the
/// write train, or the read pulse.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Hysteresis;
  CellParams cell;
  SimConfig sim;
  double initial_state = 0.0;
  std::string out_dir;  // empty: caller decides

  double amplitude = 1.0;

  std::vector<double> freqs{100.0, 400.0};
  int periods = 2;

  double t_on = 2e-3;
  double t_off = 2e-3;
  int pulses = 10;

  double write_level = 1.2;
  double write_amplitude = 5.0;

  ReadPulseSpec read;

  std::vector<NamedWaveform> variants;
  std::vector<double> states{0.5, 1.2, 2.0, 3.0, 4.0, 4.8};
};

/// Scenario defaults before any key is applied.
ScenarioConfig default_scenario(ScenarioKind kind);

/// Variants used by the distortion scenario when none are configured: a
/// zero-average pulse, a 2:1 non-zero-average pulse and a long zero-average
/// pulse whose positive half lifts a 1.2 V state past the bit threshold.
std::vector<NamedWaveform> default_distortion_variants(const ReadPulseSpec& read);

/// Validates everything up front. Unknown keys, keys that do not apply to the
/// scenario, wrong types and out-of-range values all throw ErrorKind::Config.
ScenarioConfig parse_scenario(const nlohmann::json& j);

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Summary {
  std::string scenario;
  std::vector<Check> checks;
  nlohmann::json metrics = nlohmann::json::object();
  std::vector<std::string> files;

  bool all_passed() const;
  std::string report() const;
  nlohmann::json to_json() const;
};

Summary run_hysteresis(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
Summary run_program(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
Summary run_readwrite(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
Summary run_distortion(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
Summary run_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// Dispatches on cfg.kind, creates `out_dir` and writes summary.json next to
/// the CSV traces.
Summary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace memcell
