#include "qze/zeno_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace qze {

double x2_element(int m, int n, double f) {
  if (m < 0 || n < 0) throw DomainError("level index must be non-negative");
  const double scale = 1.0 / (2.0 * f);
  if (m == n) return (2.0 * n + 1.0) * scale;
  if (m == n + 2) return std::sqrt((n + 1.0) * (n + 2.0)) * scale;
  if (n == m + 2) return std::sqrt((m + 1.0) * (m + 2.0)) * scale;
  return 0.0;
}

double leakage_estimate(int k, const TrapProtocol& protocol, double t, double t0) {
  if (k < 0) throw DomainError("level index must be non-negative");
  const double f = protocol.frequency(t0);
  const double fdot = protocol.rate();
  double total = 0.0;
  for (int n : {k - 2, k + 2}) {
    if (n < 0) continue;
    const double hdot = fdot * f * x2_element(k, n, f);
    const double gap = level_energy(n, f) - level_energy(k, f);
    const double ratio = hdot / gap;
    total += ratio * ratio * t * t;
  }
  return total;
}

double zeno_survival_estimate(int k, const TrapProtocol& protocol, int M) {
  if (M < 1) throw DomainError("survival estimate needs at least one measurement");
  const double tau = protocol.duration / M;
  double survival = 1.0;
  for (int j = 0; j < M; ++j) {
    const double leak = leakage_estimate(k, protocol, tau, j * tau);
    if (leak >= 1.0) {
      throw PredictorRangeError("per-interval leakage " + std::to_string(leak) +
                                " >= 1; the ramp is too diabatic for the survival law");
    }
    survival *= 1.0 - leak;
  }
  return std::clamp(survival, 0.0, 1.0);
}

double adiabaticity_parameter(double K, int M, double T) {
  return (K - 1.0) / (static_cast<double>(M) * T);
}

void SweepSpec::validate() const {
  if (K_values.empty()) throw ConfigError("sweep.K_values must not be empty");
  if (T_values.empty()) throw ConfigError("sweep.T_values must not be empty");
  if (M_values.empty()) throw ConfigError("sweep.M_values must not be empty");
  if (cycles_per_point < 1) throw ConfigError("sweep.cycles_per_point must be at least 1");
  for (double K : K_values) {
    for (double T : T_values) {
      for (int M : M_values) {
        CycleParams p = base;
        p.K = K;
        p.T = T;
        p.M = M;
        p.n_cycles = cycles_per_point;
        p.validate();
      }
    }
  }
}

SweepSpec default_cop_raster(bool full) {
  SweepSpec spec;
  spec.K_values = {2.0, 5.0, 10.0};
  if (full) {
    spec.T_values = {0.01, 0.0167, 0.0278, 0.0464, 0.0774, 0.129, 0.215, 0.359, 0.599, 1.0};
    spec.M_values = {10, 16, 25, 40, 63, 100, 158, 251, 398, 631, 1000};
    spec.cycles_per_point = 100;
  } else {
    spec.T_values = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5};
    spec.M_values = {10, 25, 100, 250, 500, 1000};
    spec.cycles_per_point = 20;
  }
  return spec;
}

namespace {

SweepRow run_point(const SweepSpec& spec, double K, double T, int M, const GridPtr& grid) {
  SweepRow row;
  row.K = K;
  row.T = T;
  row.M = M;
  row.omega_T = static_cast<double>(M);
  row.adiab_param = adiabaticity_parameter(K, M, T);
  row.performance_opt = performance_optimal(spec.base.mode, K);
  CycleParams p = spec.base;
  p.K = K;
  p.T = T;
  p.M = M;
  p.n_cycles = spec.cycles_per_point;
  p.record_stride = 0;
  p.density_stride = 0;
  try {
    const RunResult run = run_cycles(p, grid);
    row.performance_bar = run.performance_bar;
    row.gap = row.performance_opt - row.performance_bar;
    row.mean_survival = run.mean_survival;
    row.failed_cycles = run.excluded_cycles + run.failed_cycles;
  } catch (const std::exception& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.failed = true;
    row.error = e.what();
    row.performance_bar = row.gap = row.mean_survival = nan;
    row.failed_cycles = spec.cycles_per_point;
  }
  return row;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, const GridPtr& grid, Execution exec) {
  spec.validate();
  struct Point {
    double K, T;
    int M;
  };
  std::vector<Point> points;
  points.reserve(spec.size());
  for (double K : spec.K_values)
    for (double T : spec.T_values)
      for (int M : spec.M_values) points.push_back({K, T, M});

  SweepTable table;
  table.mode = spec.base.mode;
  table.rows.resize(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      table.rows[i] = run_point(spec, points[i].K, points[i].T, points[i].M, grid);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      table.rows[i] = run_point(spec, points[i].K, points[i].T, points[i].M, grid);
    }
  }
  return table;
}

namespace {

PredictRow predict_point(const PredictSpec& spec, int M, const GridPtr& grid) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const TrapProtocol protocol{1.0, spec.K, spec.T};
  PredictRow row;
  row.M = M;
  row.leakage_per_interval = leakage_estimate(spec.level, protocol, spec.T / M, 0.0);
  try {
    row.survival_estimate = zeno_survival_estimate(spec.level, protocol, M);
  } catch (const PredictorRangeError&) {
    row.in_range = false;
    row.survival_estimate = nan;
  }
  row.simulated_survival = nan;
  row.ratio = nan;
  if (spec.simulate) {
    ZenoConfig cfg;
    cfg.target_level = spec.level;
    cfg.measurements = M;
    const StrokeResult res =
        zeno_stroke(eigenstate(grid, spec.level, 1.0), protocol, cfg, spec.step);
    row.simulated_survival = res.survival;
    const double est_loss = 1.0 - row.survival_estimate;
    if (row.in_range && est_loss > 0.0) row.ratio = (1.0 - res.survival) / est_loss;
  }
  return row;
}

}  // namespace

std::vector<PredictRow> predict_survival(const PredictSpec& spec, const GridPtr& grid,
                                         Execution exec) {
  if (spec.level < 0) throw ConfigError("predict.level must be non-negative");
  if (!(spec.K >= 1.0)) throw ConfigError("predict.K must be at least 1");
  if (!(spec.T > 0.0)) throw ConfigError("predict.T must be positive");
  if (spec.M_values.empty()) throw ConfigError("predict.M_values must not be empty");
  for (int M : spec.M_values) {
    if (M < 1) throw ConfigError("predict.M_values entries must be at least 1");
  }
  spec.step.validate();
  std::vector<PredictRow> rows(spec.M_values.size());
  std::vector<std::exception_ptr> errors(rows.size());
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
  auto one = [&](std::ptrdiff_t i) {
    try {
      rows[i] = predict_point(spec, spec.M_values[i], grid);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace qze
