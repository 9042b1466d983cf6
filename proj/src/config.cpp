#include "qze/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "qze/error.hpp"

namespace qze {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected a real number, got '" + t + "'");
  }
  return v;
}

long long parse_integer(const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected an integer, got '" + t + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& text) {
  const long long v = parse_integer(text);
  if (v < 0) throw ConfigError("expected a non-negative integer, got '" + trim(text) + "'");
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("expected a boolean, got '" + t + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) out.push_back(static_cast<int>(parse_integer(item)));
  return out;
}

// Rounds Omega*T style entries to the nearest integer.
std::vector<int> parse_rounded_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    out.push_back(static_cast<int>(std::lround(parse_real(item))));
  }
  return out;
}

std::string fmt_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

template <typename T, typename F>
std::string fmt_list(const std::vector<T>& values, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;  // empty string: omit from output
};

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = {
      {"grid.n_points", [](RunConfig& c, const std::string& v) { c.n_points = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.n_points); }},
      {"grid.length", [](RunConfig& c, const std::string& v) { c.length = parse_real(v); },
       [](const RunConfig& c) { return fmt_real(c.length); }},
      {"evolution.dt", [](RunConfig& c, const std::string& v) { c.dt = parse_real(v); },
       [](const RunConfig& c) { return fmt_real(c.dt); }},
      {"evolution.unit", [](RunConfig& c, const std::string& v) { c.unit = parse_time_base(trim(v)); },
       [](const RunConfig& c) { return std::string(to_string(c.unit)); }},
      {"cycle.mode", [](RunConfig& c, const std::string& v) { c.mode = parse_machine_mode(trim(v)); },
       [](const RunConfig& c) { return std::string(to_string(c.mode)); }},
      {"cycle.K", [](RunConfig& c, const std::string& v) { c.K = parse_real(v); },
       [](const RunConfig& c) { return fmt_real(c.K); }},
      {"cycle.T", [](RunConfig& c, const std::string& v) { c.T = parse_real(v); },
       [](const RunConfig& c) { return fmt_real(c.T); }},
      {"cycle.M",
       [](RunConfig& c, const std::string& v) {
         c.M = static_cast<int>(parse_integer(v));
         c.M_set = true;
       },
       [](const RunConfig& c) { return c.omega ? std::string() : std::to_string(c.M); }},
      {"cycle.Omega", [](RunConfig& c, const std::string& v) { c.omega = parse_real(v); },
       [](const RunConfig& c) { return c.omega ? fmt_real(*c.omega) : std::string(); }},
      {"cycle.n_cycles", [](RunConfig& c, const std::string& v) { c.n_cycles = static_cast<int>(parse_integer(v)); },
       [](const RunConfig& c) { return std::to_string(c.n_cycles); }},
      {"cycle.renorm_mode", [](RunConfig& c, const std::string& v) { c.renorm = parse_renorm_mode(trim(v)); },
       [](const RunConfig& c) { return std::string(to_string(c.renorm)); }},
      {"cycle.ladder_renorm", [](RunConfig& c, const std::string& v) { c.ladder_renorm = parse_bool(v); },
       [](const RunConfig& c) { return fmt_bool(c.ladder_renorm); }},
      {"cycle.n_max", [](RunConfig& c, const std::string& v) { c.n_max = static_cast<int>(parse_integer(v)); },
       [](const RunConfig& c) { return std::to_string(c.n_max); }},
      {"output.populations", [](RunConfig& c, const std::string& v) { c.write_populations = parse_bool(v); },
       [](const RunConfig& c) { return fmt_bool(c.write_populations); }},
      {"output.population_stride", [](RunConfig& c, const std::string& v) { c.population_stride = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.population_stride); }},
      {"output.densities", [](RunConfig& c, const std::string& v) { c.write_densities = parse_bool(v); },
       [](const RunConfig& c) { return fmt_bool(c.write_densities); }},
      {"output.density_stride", [](RunConfig& c, const std::string& v) { c.density_stride = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.density_stride); }},
      {"output.compact_densities", [](RunConfig& c, const std::string& v) { c.compact_densities = parse_bool(v); },
       [](const RunConfig& c) { return fmt_bool(c.compact_densities); }},
      {"sweep.K_values", [](RunConfig& c, const std::string& v) { c.sweep_K = parse_real_list(v); },
       [](const RunConfig& c) { return fmt_list(c.sweep_K, fmt_real); }},
      {"sweep.T_values", [](RunConfig& c, const std::string& v) { c.sweep_T = parse_real_list(v); },
       [](const RunConfig& c) { return fmt_list(c.sweep_T, fmt_real); }},
      {"sweep.M_values",
       [](RunConfig& c, const std::string& v) {
         c.sweep_M = parse_int_list(v);
         c.sweep_M_set = true;
       },
       [](const RunConfig& c) { return fmt_list(c.sweep_M, [](int m) { return std::to_string(m); }); }},
      {"sweep.OmegaT_values",
       [](RunConfig& c, const std::string& v) {
         c.sweep_M = parse_rounded_list(v);
         c.sweep_omegaT_set = true;
       },
       [](const RunConfig&) { return std::string(); }},
      {"sweep.cycles_per_point", [](RunConfig& c, const std::string& v) { c.cycles_per_point = static_cast<int>(parse_integer(v)); },
       [](const RunConfig& c) { return std::to_string(c.cycles_per_point); }},
      {"sweep.full_raster", [](RunConfig& c, const std::string& v) { c.full_raster = parse_bool(v); },
       [](const RunConfig& c) { return fmt_bool(c.full_raster); }},
      {"predict.level", [](RunConfig& c, const std::string& v) { c.predict_level = static_cast<int>(parse_integer(v)); },
       [](const RunConfig& c) { return std::to_string(c.predict_level); }},
      {"predict.M_values", [](RunConfig& c, const std::string& v) { c.predict_M = parse_int_list(v); },
       [](const RunConfig& c) { return fmt_list(c.predict_M, [](int m) { return std::to_string(m); }); }},
      {"predict.simulate", [](RunConfig& c, const std::string& v) { c.predict_simulate = parse_bool(v); },
       [](const RunConfig& c) { return fmt_bool(c.predict_simulate); }},
  };
  return keys;
}

}  // namespace

std::vector<std::string> known_keys() {
  std::vector<std::string> names;
  for (const auto& k : registry()) names.push_back(k.name);
  return names;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto& keys = registry();
  const auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return k.name == key; });
  if (it == keys.end()) throw ConfigError("unknown configuration key '" + key + "'");
  try {
    it->set(cfg, value);
  } catch (const ConfigError& e) {
    throw ConfigError("invalid value for " + key + ": " + e.what());
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (section.empty()) throw ConfigError(where + ": key '" + key + "' outside any [section]");
    try {
      apply_setting(cfg, section + "." + key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot read configuration file");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
  }
  apply_setting(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& k : registry()) {
    const std::string value = k.get(cfg);
    if (value.empty()) continue;
    const auto dot = k.name.find('.');
    const std::string sec = k.name.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out += "\n";
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += k.name.substr(dot + 1) + " = " + value + "\n";
  }
  return out;
}

GridPtr RunConfig::grid() const { return make_grid(n_points, length); }

StepParams RunConfig::step() const { return {dt, UnitConvention(unit)}; }

CycleParams RunConfig::cycle_params() const {
  CycleParams p;
  p.K = K;
  p.T = T;
  p.M = omega ? measurements_for_rate(*omega, T) : M;
  p.step = step();
  p.n_cycles = n_cycles;
  p.mode = mode;
  p.renorm = renorm;
  p.ladder_renorm = ladder_renorm;
  p.n_max = n_max;
  return p;
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec spec;
  if (full_raster) {
    spec = default_cop_raster(true);
    spec.K_values = sweep_K;
  } else {
    spec.K_values = sweep_K;
    spec.T_values = sweep_T;
    spec.M_values = sweep_M;
    spec.cycles_per_point = cycles_per_point;
  }
  spec.base = cycle_params();
  return spec;
}

PredictSpec RunConfig::predict_spec() const {
  PredictSpec spec;
  spec.level = predict_level;
  spec.K = K;
  spec.T = T;
  spec.M_values = predict_M;
  spec.simulate = predict_simulate;
  spec.step = step();
  return spec;
}

void RunConfig::validate() const {
  if (M_set && omega) throw ConfigError("set either cycle.M or cycle.Omega, not both");
  if (sweep_M_set && sweep_omegaT_set) {
    throw ConfigError("set either sweep.M_values or sweep.OmegaT_values, not both");
  }
  if (omega && !(*omega > 0.0)) throw ConfigError("cycle.Omega must be positive");
  grid();
  step().validate();
  try {
    cycle_params().validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("[cycle] ") + e.what());
  }
}

}  // namespace qze
