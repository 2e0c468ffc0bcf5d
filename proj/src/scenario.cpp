#include "memcell/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "memcell/error.hpp"

namespace memcell {

using nlohmann::json;

std::string_view to_string(ScenarioKind k) noexcept {
  switch (k) {
    case ScenarioKind::Hysteresis: return "hysteresis";
    case ScenarioKind::Program: return "program";
    case ScenarioKind::ReadWrite: return "readwrite";
    case ScenarioKind::Distortion: return "distortion";
    case ScenarioKind::Sweep: return "sweep";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  for (auto k : {ScenarioKind::Hysteresis, ScenarioKind::Program, ScenarioKind::ReadWrite,
                 ScenarioKind::Distortion, ScenarioKind::Sweep})
    if (to_string(k) == name) return k;
  fail(ErrorKind::Config, "unknown scenario '" + std::string(name) +
                              "' (expected hysteresis, program, readwrite, distortion or sweep)");
}

// --- Defaults ---------------------------------------------------------------

std::vector<NamedWaveform> default_distortion_variants(const ReadPulseSpec& read) {
  const double h = read.half_period;
  return {
      {"zero_average", make_read_pulse(read)},
      {"nonzero_average", make_bipolar_pulse(read.amplitude, 2.0 * h, h)},
      {"long_zero_average", make_bipolar_pulse(read.amplitude, 6.0 * h, 6.0 * h)},
  };
}

ScenarioConfig default_scenario(ScenarioKind kind) {
  ScenarioConfig c;
  c.kind = kind;
  switch (kind) {
    case ScenarioKind::Hysteresis: c.amplitude = 1.0; break;
    case ScenarioKind::Program: c.amplitude = 1.5; break;
    case ScenarioKind::ReadWrite:
    case ScenarioKind::Sweep: c.amplitude = 1.0; break;
    case ScenarioKind::Distortion:
      c.amplitude = 1.0;
      c.read.half_period = 5e-3;
      c.initial_state = 1.2;
      break;
  }
  c.read.amplitude = c.amplitude;
  return c;
}

// --- Parsing ----------------------------------------------------------------

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(ErrorKind::Config, what); }

double number(const json& v, const std::string& key) {
  if (!v.is_number()) config_error("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) config_error("'" + key + "' must be finite");
  return x;
}

long integer(const json& v, const std::string& key) {
  const double x = number(v, key);
  if (x != std::floor(x) || std::fabs(x) > 1e9) config_error("'" + key + "' must be an integer");
  return static_cast<long>(x);
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) config_error("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, key));
  return out;
}

Segment parse_segment(const json& s) {
  if (!s.is_object()) config_error("variant segment must be an object");
  std::optional<double> duration, level;
  std::optional<Sine> sine;
  for (const auto& [key, v] : s.items()) {
    if (key == "duration") {
      duration = number(v, key);
    } else if (key == "level") {
      level = number(v, key);
    } else if (key == "sine") {
      if (!v.is_object()) config_error("'sine' must be an object");
      Sine sn{0.0, 0.0, 0.0};
      for (const auto& [sk, sv] : v.items()) {
        if (sk == "amplitude") sn.amplitude = number(sv, sk);
        else if (sk == "frequency") sn.frequency = number(sv, sk);
        else if (sk == "phase") sn.phase = number(sv, sk);
        else config_error("unknown key 'sine." + sk + "'");
      }
      sine = sn;
    } else {
      config_error("unknown segment key '" + key + "'");
    }
  }
  if (!duration) config_error("segment needs 'duration'");
  if (level.has_value() == sine.has_value()) config_error("segment needs exactly one of 'level' or 'sine'");
  if (level) return {*duration, Constant{*level}};
  return {*duration, *sine};
}

NamedWaveform parse_variant(const json& v) {
  if (!v.is_object()) config_error("each variant must be an object");
  std::string name;
  std::vector<Segment> segments;
  long repeat = 1;
  for (const auto& [key, val] : v.items()) {
    if (key == "name") {
      if (!val.is_string()) config_error("variant 'name' must be a string");
      name = val.get<std::string>();
    } else if (key == "segments") {
      if (!val.is_array()) config_error("variant 'segments' must be an array");
      for (const auto& s : val) segments.push_back(parse_segment(s));
    } else if (key == "repeat") {
      repeat = integer(val, key);
    } else {
      config_error("unknown variant key '" + key + "'");
    }
  }
  if (name.empty()) config_error("variant needs a non-empty 'name'");
  if (name.find_first_of("/\\") != std::string::npos) config_error("variant name may not contain path separators");
  return {name, Waveform(std::move(segments), static_cast<int>(repeat))};
}

const std::set<std::string>& common_keys() {
  static const std::set<std::string> keys{
      "scenario", "dt", "method", "record_stride", "out", "initial_state", "R0", "k", "C",
      "polarity", "vC_min", "vC_max", "V_t", "K", "V_DD", "R_load", "tie_epsilon"};
  return keys;
}

const std::set<std::string>& scenario_keys(ScenarioKind kind) {
  static const std::set<std::string> hysteresis{"freqs", "amplitude", "periods"};
  static const std::set<std::string> program{"amplitude", "t_on", "t_off", "pulses"};
  static const std::set<std::string> readwrite{"write_level", "write_amplitude", "amplitude", "read_half_period"};
  static const std::set<std::string> distortion{"amplitude", "read_half_period", "variants"};
  static const std::set<std::string> sweep{"amplitude", "read_half_period", "states"};
  switch (kind) {
    case ScenarioKind::Hysteresis: return hysteresis;
    case ScenarioKind::Program: return program;
    case ScenarioKind::ReadWrite: return readwrite;
    case ScenarioKind::Distortion: return distortion;
    case ScenarioKind::Sweep: return sweep;
  }
  return hysteresis;
}

void require(bool ok, const std::string& what) {
  if (!ok) config_error(what);
}

void validate(const ScenarioConfig& c) {
  const double lo = c.cell.emulator.vc_min;
  const double hi = c.cell.emulator.vc_max;
  auto in_state_range = [&](double s) { return s >= lo && s <= hi; };

  require(c.sim.dt > 0.0, "'dt' must be > 0");
  require(c.sim.record_stride >= 1, "'record_stride' must be >= 1");
  require(in_state_range(c.initial_state), "'initial_state' outside [vC_min, vC_max]");

  switch (c.kind) {
    case ScenarioKind::Hysteresis:
      require(!c.freqs.empty(), "'freqs' must not be empty");
      for (double f : c.freqs) require(f > 0.0, "every frequency must be > 0");
      require(c.periods >= 1, "'periods' must be >= 1");
      require(c.amplitude > 0.0, "'amplitude' must be > 0");
      break;
    case ScenarioKind::Program:
      require(c.amplitude >= 0.0 && c.amplitude <= 5.0, "'amplitude' outside [0, 5] V");
      require(c.t_on > 0.0 && c.t_off > 0.0, "'t_on' and 't_off' must be > 0");
      require(c.pulses >= 1, "'pulses' must be >= 1");
      break;
    case ScenarioKind::ReadWrite:
      require(in_state_range(c.write_level), "'write_level' outside [vC_min, vC_max]");
      require(c.write_level >= c.initial_state, "'write_level' below 'initial_state' cannot be written");
      require(c.write_amplitude > 0.0 && c.write_amplitude <= 5.0, "'write_amplitude' outside (0, 5] V");
      [[fallthrough]];
    case ScenarioKind::Sweep:
    case ScenarioKind::Distortion:
      require(c.read.amplitude > 0.0, "'amplitude' must be > 0");
      require(c.read.half_period > 0.0, "'read_half_period' must be > 0");
      break;
  }
  if (c.kind == ScenarioKind::Sweep) {
    require(!c.states.empty(), "'states' must not be empty");
    for (double s : c.states) require(in_state_range(s), "sweep state outside [vC_min, vC_max]");
  }
}

}  // namespace

ScenarioConfig parse_scenario(const json& j) {
  if (!j.is_object()) config_error("scenario config must be a JSON object");
  if (!j.contains("scenario") || !j["scenario"].is_string()) config_error("config needs a string 'scenario'");

  ScenarioConfig c = default_scenario(scenario_kind_from_string(j["scenario"].get<std::string>()));
  const auto& allowed = scenario_keys(c.kind);
  bool has_variants = false;

  try {
    for (const auto& [key, v] : j.items()) {
      if (!common_keys().contains(key) && !allowed.contains(key)) {
        if (scenario_keys(ScenarioKind::Hysteresis).contains(key) ||
            scenario_keys(ScenarioKind::Program).contains(key) ||
            scenario_keys(ScenarioKind::ReadWrite).contains(key) ||
            scenario_keys(ScenarioKind::Distortion).contains(key) ||
            scenario_keys(ScenarioKind::Sweep).contains(key))
          config_error("key '" + key + "' does not apply to scenario '" + std::string(to_string(c.kind)) + "'");
        config_error("unknown key '" + key + "'");
      }

      if (key == "scenario") continue;
      else if (key == "dt") c.sim.dt = number(v, key);
      else if (key == "method") {
        if (!v.is_string()) config_error("'method' must be \"rk4\" or \"euler\"");
        const auto m = v.get<std::string>();
        if (m == "rk4") c.sim.method = Method::Rk4;
        else if (m == "euler") c.sim.method = Method::Euler;
        else config_error("'method' must be \"rk4\" or \"euler\"");
      } else if (key == "record_stride") {
        const long s = integer(v, key);
        if (s < 1) config_error("'record_stride' must be >= 1");
        c.sim.record_stride = static_cast<std::size_t>(s);
      } else if (key == "out") {
        if (!v.is_string()) config_error("'out' must be a string");
        c.out_dir = v.get<std::string>();
      } else if (key == "initial_state") c.initial_state = number(v, key);
      else if (key == "R0") c.cell.emulator.r0 = number(v, key);
      else if (key == "k") c.cell.emulator.gain = number(v, key);
      else if (key == "C") c.cell.emulator.capacitance = number(v, key);
      else if (key == "polarity") {
        const auto p = v.is_string() ? v.get<std::string>() : std::string{};
        if (p == "incremental") c.cell.emulator.polarity = Polarity::Incremental;
        else if (p == "decremental") c.cell.emulator.polarity = Polarity::Decremental;
        else config_error("'polarity' must be \"incremental\" or \"decremental\"");
      } else if (key == "vC_min") c.cell.emulator.vc_min = number(v, key);
      else if (key == "vC_max") c.cell.emulator.vc_max = number(v, key);
      else if (key == "V_t") c.cell.pmos.threshold = number(v, key);
      else if (key == "K") c.cell.pmos.k = number(v, key);
      else if (key == "V_DD") c.cell.pmos.vdd = number(v, key);
      else if (key == "R_load") c.cell.pmos.r_load = number(v, key);
      else if (key == "tie_epsilon") c.cell.comparator.tie_epsilon = number(v, key);
      else if (key == "amplitude") c.amplitude = number(v, key);
      else if (key == "freqs") c.freqs = number_list(v, key);
      else if (key == "periods") c.periods = static_cast<int>(integer(v, key));
      else if (key == "t_on") c.t_on = number(v, key);
      else if (key == "t_off") c.t_off = number(v, key);
      else if (key == "pulses") c.pulses = static_cast<int>(integer(v, key));
      else if (key == "write_level") c.write_level = number(v, key);
      else if (key == "write_amplitude") c.write_amplitude = number(v, key);
      else if (key == "read_half_period") c.read.half_period = number(v, key);
      else if (key == "states") c.states = number_list(v, key);
      else if (key == "variants") {
        if (!v.is_array()) config_error("'variants' must be an array");
        has_variants = true;
        c.variants.clear();
        for (const auto& e : v) c.variants.push_back(parse_variant(e));
      }
    }
    c.read.amplitude = c.amplitude;
    c.cell.validate();
    validate(c);
    if (c.kind == ScenarioKind::Distortion && !has_variants)
      c.variants = default_distortion_variants(c.read);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    config_error(e.what());
  }
  return c;
}

// --- Summary ----------------------------------------------------------------

bool Summary::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Summary::report() const {
  std::ostringstream os;
  os << "scenario: " << scenario << '\n';
  for (const auto& [key, v] : metrics.items()) os << "  " << key << ": " << v.dump() << '\n';
  for (const auto& c : checks)
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
  for (const auto& f : files) os << "  wrote " << f << '\n';
  os << (all_passed() ? "all checks passed" : "some checks failed") << '\n';
  return os.str();
}

json Summary::to_json() const {
  json j;
  j["scenario"] = scenario;
  j["passed"] = all_passed();
  j["metrics"] = metrics;
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["files"] = files;
  return j;
}

// --- Scenario runners -------------------------------------------------------

namespace {

std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string write_trace(const Trace& t, const std::filesystem::path& dir, const std::string& name) {
  const auto path = dir / name;
  write_csv(t, path);
  return path.string();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  os << text;
  if (!os) fail(ErrorKind::Io, "write failed for " + path.string());
}

double bit_of(double state, const CellParams& p) {
  return state > kBitThreshold ? p.comparator.v_high : p.comparator.v_low;
}

}  // namespace

Summary run_hysteresis(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  constexpr double kPinchLimit = 1e-9;
  constexpr double kAreaChange = 0.10;

  struct Result {
    double freq;
    HysteresisMetrics m;
    Trace trace;
  };

  const MemoryCell cell(cfg.cell, cfg.initial_state);
  std::vector<std::future<Result>> jobs;
  for (double f : cfg.freqs) {
    jobs.push_back(std::async(std::launch::async, [&cell, &cfg, f] {
      const Waveform drive = make_sine(cfg.amplitude, f, cfg.periods);
      Trace t = cell.read_distortion_probe(drive, cfg.sim);
      return Result{f, hysteresis_metrics(t, 1.0 / f), std::move(t)};
    }));
  }

  Summary s;
  s.scenario = "hysteresis";
  s.metrics["amplitude"] = cfg.amplitude;
  s.metrics["frequencies"] = json::array();
  std::vector<Result> results;
  for (auto& j : jobs) results.push_back(j.get());

  for (const auto& r : results) {
    const std::string file = write_trace(r.trace, out_dir, "hysteresis_" + num(r.freq) + "hz.csv");
    s.files.push_back(file);
    s.metrics["frequencies"].push_back(
        {{"frequency", r.freq}, {"pinch_residual", r.m.pinch_residual}, {"lobe_area", r.m.lobe_area}});
    s.checks.push_back({"pinch residual below 1e-9 A at " + num(r.freq) + " Hz",
                        r.m.pinch_residual < kPinchLimit, num(r.m.pinch_residual) + " A"});
  }

  if (results.size() >= 2) {
    const auto lowest = std::min_element(results.begin(), results.end(),
                                         [](const Result& a, const Result& b) { return a.freq < b.freq; });
    const auto highest = std::max_element(results.begin(), results.end(),
                                          [](const Result& a, const Result& b) { return a.freq < b.freq; });
    const double a_lo = lowest->m.lobe_area;
    const double a_hi = highest->m.lobe_area;
    const double change = std::fabs(a_hi - a_lo) / std::max(a_lo, a_hi);
    const char* direction = a_hi < a_lo ? "decreases" : (a_hi > a_lo ? "increases" : "unchanged");
    s.metrics["lobe_area_relative_change"] = change;
    s.metrics["lobe_area_direction"] = std::string("lobe area ") + direction + " with frequency";
    s.checks.push_back({"lobe areas differ by more than 10% between " + num(lowest->freq) + " and " +
                            num(highest->freq) + " Hz",
                        change > kAreaChange, num(change * 100.0) + "% , " + direction + " with frequency"});
  }
  return s;
}

Summary run_program(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  MemoryCell cell(cfg.cell, cfg.initial_state);
  const Trace t = cell.write(cfg.amplitude, cfg.t_on, cfg.t_off, cfg.pulses, cfg.sim);

  std::vector<double> edges;
  const Waveform train = make_write_pulse_train(cfg.amplitude, cfg.t_on, cfg.t_off, cfg.pulses);
  for (const auto& p : train.pieces())
    if (p.segment == 0) edges.push_back(p.end);
  const auto steps = staircase_profile(t, edges);

  Summary s;
  s.scenario = "program";
  s.metrics["amplitude"] = cfg.amplitude;
  s.metrics["t_on"] = cfg.t_on;
  s.metrics["t_off"] = cfg.t_off;
  s.metrics["pulses"] = cfg.pulses;
  s.metrics["initial_state"] = cfg.initial_state;
  s.metrics["final_state"] = cell.state();
  s.metrics["total_gain"] = cell.state() - cfg.initial_state;
  json deltas = json::array();
  std::ostringstream table;
  table << "pulse_index,t_edge,state,delta\n";
  for (const auto& st : steps) {
    deltas.push_back(st.delta);
    table << st.pulse_index << ',' << num(edges[st.pulse_index]) << ',' << num(st.state) << ','
          << num(st.delta) << '\n';
  }
  s.metrics["increments"] = deltas;

  s.files.push_back(write_trace(t, out_dir, "program.csv"));
  const auto table_path = out_dir / "staircase.csv";
  write_text(table_path, table.str());
  s.files.push_back(table_path.string());

  if (cfg.amplitude > 0.0) {
    bool decreasing = true;
    for (std::size_t k = 1; k < steps.size(); ++k) decreasing = decreasing && steps[k].delta < steps[k - 1].delta;
    const bool positive = std::all_of(steps.begin(), steps.end(), [](const StairStep& x) { return x.delta > 0.0; });
    s.checks.push_back({"per-pulse increments strictly decreasing", decreasing, ""});
    s.checks.push_back({"every pulse raises the state", positive, ""});
  } else {
    const bool flat = std::all_of(steps.begin(), steps.end(), [](const StairStep& x) { return x.delta == 0.0; });
    s.checks.push_back({"zero-amplitude train leaves the state unchanged", flat, ""});
  }
  return s;
}

Summary run_readwrite(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  MemoryCell cell(cfg.cell, cfg.initial_state);
  Trace full;
  if (cfg.write_level > cell.state()) full = cell.write_level(cfg.write_level, cfg.write_amplitude, cfg.sim);
  const double written = cell.state();
  const double offset = full.empty() ? 0.0 : full.t_end();
  ReadOutcome r = cell.read(cfg.read, cfg.sim);
  full.append(r.trace, offset);

  const double expected = bit_of(written, cfg.cell);
  Summary s;
  s.scenario = "readwrite";
  s.metrics["write_level"] = cfg.write_level;
  s.metrics["written_state"] = written;
  s.metrics["bit"] = r.result.bit;
  s.metrics["expected_bit"] = expected;
  s.metrics["sample_time"] = offset + r.result.sample_time;
  s.metrics["state_after"] = r.result.state_after;
  s.metrics["restoration_error"] = std::fabs(r.result.state_after - r.result.state_before);
  s.metrics["peak_state"] = r.result.peak_state;
  s.files.push_back(write_trace(full, out_dir, "readwrite.csv"));

  s.checks.push_back({"read bit matches stored state", r.result.bit == expected,
                      "state " + num(written) + " V read as " + num(r.result.bit) + " V"});
  s.checks.push_back({"state restored after read", r.result.restored,
                      num(std::fabs(r.result.state_after - r.result.state_before)) + " V drift"});
  return s;
}

Summary run_distortion(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  const MemoryCell cell(cfg.cell, cfg.initial_state);
  const double before = cfg.initial_state;
  const double expected = bit_of(before, cfg.cell);
  const double tol = cell.restoration_tolerance(before);

  Summary s;
  s.scenario = "distortion";
  s.metrics["initial_state"] = before;
  s.metrics["restoration_tolerance"] = tol;
  s.metrics["variants"] = json::array();

  std::ostringstream table;
  table << "name,average,state_before,state_after,restoration_error,peak_state,false_region,sampled_bit\n";

  double worst_zero = -1.0;
  double best_nonzero = -1.0;
  for (const auto& v : cfg.variants) {
    const Trace t = cell.read_distortion_probe(v.wave, cfg.sim);
    const double after = t.rows.back().state;
    const double err = std::fabs(after - before);
    const double avg = time_average(v.wave);
    double peak = before;
    for (const auto& row : t.rows) peak = std::max(peak, row.state);
    const bool false_region = before <= kBitThreshold && peak > kBitThreshold;
    const bool strobed = !cell.strobe_times(v.wave).empty();
    const double sampled = t.rows.back().bit_out;

    s.files.push_back(write_trace(t, out_dir, "distortion_" + v.name + ".csv"));
    json row = {{"name", v.name},          {"average", avg},       {"state_after", after},
                {"restoration_error", err}, {"peak_state", peak},   {"false_region", false_region}};
    if (strobed) row["sampled_bit"] = sampled;
    s.metrics["variants"].push_back(row);
    table << v.name << ',' << num(avg) << ',' << num(before) << ',' << num(after) << ',' << num(err) << ','
          << num(peak) << ',' << (false_region ? 1 : 0) << ',' << (strobed ? num(sampled) : "") << '\n';

    if (avg == 0.0) {
      worst_zero = std::max(worst_zero, err);
      s.checks.push_back({v.name + ": zero-average pulse restores the state", err <= tol,
                          num(err) + " V vs tolerance " + num(tol) + " V"});
    } else {
      best_nonzero = best_nonzero < 0.0 ? err : std::min(best_nonzero, err);
    }
    if (strobed)
      s.checks.push_back({v.name + ": bit sampled on the negative half matches the stored bit",
                          sampled == expected,
                          std::string(false_region ? "state crossed the bit threshold, " : "") + "sampled " +
                              num(sampled) + " V"});
  }

  if (worst_zero >= 0.0 && best_nonzero >= 0.0) {
    const double ratio = worst_zero > 0.0 ? best_nonzero / worst_zero : INFINITY;
    s.metrics["nonzero_to_zero_error_ratio"] = std::isfinite(ratio) ? json(ratio) : json("inf");
    s.checks.push_back({"non-zero-average pulses disturb the state at least 5x more", best_nonzero >= 5.0 * worst_zero,
                        "ratio " + (std::isfinite(ratio) ? num(ratio) : std::string("inf"))});
  }

  const auto table_path = out_dir / "distortion.csv";
  write_text(table_path, table.str());
  s.files.push_back(table_path.string());
  return s;
}

Summary run_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  constexpr double kGuard = 0.05;

  Summary s;
  s.scenario = "sweep";
  s.metrics["read_amplitude"] = cfg.read.amplitude;
  s.metrics["read_half_period"] = cfg.read.half_period;
  s.metrics["states"] = json::array();

  std::ostringstream table;
  table << "state,bit,expected_bit,peak_state,state_after,false_region\n";
  for (double st : cfg.states) {
    MemoryCell cell(cfg.cell, st);
    const ReadOutcome r = cell.read(cfg.read, cfg.sim);
    const double expected = bit_of(st, cfg.cell);
    const bool false_region = st <= kBitThreshold && r.result.peak_state > kBitThreshold;
    table << num(st) << ',' << num(r.result.bit) << ',' << num(expected) << ',' << num(r.result.peak_state)
          << ',' << num(r.result.state_after) << ',' << (false_region ? 1 : 0) << '\n';
    s.metrics["states"].push_back({{"state", st},
                                   {"bit", r.result.bit},
                                   {"peak_state", r.result.peak_state},
                                   {"state_after", r.result.state_after},
                                   {"false_region", false_region}});
    if (std::fabs(st - kBitThreshold) <= kGuard) continue;
    s.checks.push_back({"state " + num(st) + " V reads " + (expected == cfg.cell.comparator.v_high ? "high" : "low"),
                        r.result.bit == expected,
                        std::string(false_region ? "positive half crossed the bit threshold, " : "") + "read " +
                            num(r.result.bit) + " V"});
  }
  const auto table_path = out_dir / "sweep.csv";
  write_text(table_path, table.str());
  s.files.push_back(table_path.string());
  return s;
}

Summary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory " + out_dir.string() + ": " + ec.message());

  Summary s;
  switch (cfg.kind) {
    case ScenarioKind::Hysteresis: s = run_hysteresis(cfg, out_dir); break;
    case ScenarioKind::Program: s = run_program(cfg, out_dir); break;
    case ScenarioKind::ReadWrite: s = run_readwrite(cfg, out_dir); break;
    case ScenarioKind::Distortion: s = run_distortion(cfg, out_dir); break;
    case ScenarioKind::Sweep: s = run_sweep(cfg, out_dir); break;
  }
  const auto path = out_dir / "summary.json";
  s.files.push_back(path.string());
  write_text(path, s.to_json().dump(2) + "\n");
  return s;
}

}  // namespace memcell
