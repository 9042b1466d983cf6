#pragma once

// Run configuration: a sectioned "key = value" text file, overridable with
// --set section.key=value. Unknown keys are rejected.
//
//   [grid]       n_points, length
//   [evolution]  dt, unit (per_f | per_omega)
//   [cycle]      mode, K, T, M | Omega, n_cycles, renorm_mode, ladder_renorm, n_max
//   [output]     populations, population_stride, densities, density_stride, compact_densities
//   [sweep]      K_values, T_values, M_values | OmegaT_values, cycles_per_point, full_raster
//   [predict]    level, M_values, simulate

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qze/thermo_cycle.hpp"
#include "qze/zeno_analysis.hpp"

namespace qze {

struct RunConfig {
  // [grid]
  std::size_t n_points = kDefaultGridPoints;
  double length = kDefaultGridLength;
  // [evolution]
  double dt = kDefaultTimeStep;
  TimeBase unit = TimeBase::per_f;
  // [cycle]
  MachineMode mode = MachineMode::heat_pump;
  double K = 5.0;
  double T = 0.1;
  int M = 2500;
  std::optional<double> omega;  // if set, M = round(Omega T)
  int n_cycles = 10;
  RenormMode renorm = RenormMode::bare;
  bool ladder_renorm = false;
  int n_max = kDefaultLevelCutoff;
  // [output]
  bool write_populations = true;
  std::size_t population_stride = 100;
  bool write_densities = false;
  std::size_t density_stride = 100;
  bool compact_densities = false;
  // [sweep]
  std::vector<double> sweep_K{2.0, 5.0, 10.0};
  std::vector<double> sweep_T{0.01, 0.02, 0.05, 0.1, 0.2, 0.5};
  std::vector<int> sweep_M{10, 25, 100, 250, 500, 1000};
  int cycles_per_point = 20;
  bool full_raster = false;
  // [predict]
  int predict_level = 1;
  std::vector<int> predict_M{10, 100, 1000};
  bool predict_simulate = false;

  // tracks keys that are mutually exclusive
  bool M_set = false;
  bool sweep_M_set = false;
  bool sweep_omegaT_set = false;

  GridPtr grid() const;
  StepParams step() const;
  CycleParams cycle_params() const;
  SweepSpec sweep_spec() const;
  PredictSpec predict_spec() const;
  /// Cross-key checks; throws ConfigError naming the offending key.
  void validate() const;
};

/// Applies one "section.key" = value assignment. Throws ConfigError for unknown
/// keys or malformed values; the message names the key.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses the text of a configuration file into cfg.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "config");
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Parses "section.key=value" as given to --set.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Effective configuration in the file format; parses back to the same config.
std::string format_config(const RunConfig& cfg);

/// Every recognized "section.key".
std::vector<std::string> known_keys();

}  // namespace qze
