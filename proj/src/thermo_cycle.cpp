#include "qze/thermo_cycle.hpp"

#include <cmath>

namespace qze {

const char* to_string(MachineMode mode) {
  return mode == MachineMode::heat_pump ? "heat_pump" : "engine";
}

MachineMode parse_machine_mode(const std::string& text) {
  if (text == "heat_pump") return MachineMode::heat_pump;
  if (text == "engine") return MachineMode::engine;
  throw ConfigError("mode must be heat_pump or engine, got '" + text + "'");
}

void CycleParams::validate() const {
  if (!(K > 1.0) || !std::isfinite(K)) throw ConfigError("K must exceed 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be positive");
  if (M < 0) throw ConfigError("M must be non-negative");
  if (n_cycles < 1) throw ConfigError("n_cycles must be at least 1");
  if (n_max < 1) throw ConfigError("n_max must be at least 1");
  step.validate();
  const StepSchedule sched = StepSchedule::make(T, step.dt);
  if (static_cast<std::size_t>(M) > sched.n_steps) {
    throw ConfigError("M = " + std::to_string(M) + " exceeds the " +
                      std::to_string(sched.n_steps) + " time steps of a stroke");
  }
}

int measurements_for_rate(double omega, double T) {
  if (!(omega > 0.0) || !(T > 0.0)) throw ConfigError("Omega and T must be positive");
  return std::max(1, static_cast<int>(std::lround(omega * T)));
}

double cop_optimal(double K) {
  if (!(K > 1.0)) throw DomainError("K must exceed 1");
  return K / (K - 1.0);
}

double eta_optimal(double K) {
  if (!(K > 1.0)) throw DomainError("K must exceed 1");
  return (K - 1.0) / K;
}

double performance_optimal(MachineMode mode, double K) {
  return mode == MachineMode::heat_pump ? cop_optimal(K) : eta_optimal(K);
}

CycleRunner::CycleRunner(GridPtr grid, CycleParams params)
    : grid_(std::move(grid)), params_(params), propagator_(grid_, params.step) {
  params_.validate();
}

Wavefunction CycleRunner::initial_state() const { return eigenstate(grid_, 0, 1.0); }

void CycleRunner::snapshot(const Wavefunction& psi, double f) {
  if (params_.record_stride > 0) {
    trace_.populations.push_back({clock_, f, populations(psi, f, params_.n_max)});
  }
  if (params_.density_stride > 0) trace_.densities.push_back({clock_, psi.density()});
}

StrokeResult CycleRunner::stroke(const Wavefunction& psi, double f_from, double f_to,
                                 int level) {
  ZenoConfig cfg;
  cfg.target_level = level;
  cfg.measurements = params_.M;
  cfg.renorm = params_.renorm;
  cfg.record_stride = params_.record_stride;
  cfg.density_stride = params_.density_stride;
  cfg.n_max = params_.n_max;
  StrokeResult res = zeno_stroke(propagator_, psi, {f_from, f_to, params_.T}, cfg);
  for (auto& s : res.population_trace) {
    s.t += clock_;
    trace_.populations.push_back(std::move(s));
  }
  for (auto& s : res.density_trace) {
    s.t += clock_;
    trace_.densities.push_back(std::move(s));
  }
  res.population_trace.clear();
  res.density_trace.clear();
  clock_ += params_.T;
  return res;
}

Wavefunction CycleRunner::ladder(const Wavefunction& psi, double f, Ladder direction) {
  Wavefunction out = apply_ladder(psi, f, direction);
  if (params_.ladder_renorm) {
    const double after = out.norm_sq();
    if (after > 0.0) out *= std::sqrt(psi.norm_sq() / after);
  }
  snapshot(out, f);
  return out;
}

namespace {

double heat(const Populations& before, const Populations& after, double f) {
  return after.energy(f) - before.energy(f);
}

void close_record(CycleRecord& rec, const Wavefunction& psi_a, const Wavefunction& psi_end) {
  rec.norm_start = psi_a.norm_sq();
  rec.norm_end = psi_end.norm_sq();
  rec.energy_change = mean_energy(psi_end, 1.0) - mean_energy(psi_a, 1.0);
  rec.closure_residual =
      rec.q_in + rec.q_out + rec.w_compress + rec.w_expand - rec.energy_change;
}

}  // namespace

CycleOutcome CycleRunner::heat_pump_cycle(const Wavefunction& psi_a, int index) {
  const double K = params_.K;
  const int n_max = params_.n_max;
  CycleRecord rec;
  rec.index = index;
  if (clock_ == 0.0) snapshot(psi_a, 1.0);

  rec.at_a = populations(psi_a, 1.0, n_max);
  Wavefunction psi_d = ladder(psi_a, 1.0, Ladder::raise);
  rec.at_d = populations(psi_d, 1.0, n_max);
  rec.q_in = heat(rec.at_a, rec.at_d, 1.0);

  StrokeResult compress = stroke(psi_d, 1.0, K, 1);
  rec.at_c = populations(compress.psi_final, K, n_max);
  Wavefunction psi_b = ladder(compress.psi_final, K, Ladder::lower);
  rec.at_b = populations(psi_b, K, n_max);
  rec.q_out = heat(rec.at_c, rec.at_b, K);

  StrokeResult expand = stroke(psi_b, K, 1.0, 0);

  rec.w_compress = compress.work;
  rec.w_expand = expand.work;
  rec.survival_first = compress.survival;
  rec.survival_second = expand.survival;
  rec.back_action_energy = compress.back_action_energy + expand.back_action_energy;
  rec.max_edge_density = std::max(compress.max_edge_density, expand.max_edge_density);
  const double denom = rec.q_out + rec.q_in;
  rec.valid = std::abs(denom) >= kVanishingHeat;
  rec.performance = rec.valid ? rec.q_out / denom : std::nan("");
  close_record(rec, psi_a, expand.psi_final);
  return {std::move(expand.psi_final), std::move(rec)};
}

CycleOutcome CycleRunner::engine_cycle(const Wavefunction& psi_a, int index) {
  const double K = params_.K;
  const int n_max = params_.n_max;
  CycleRecord rec;
  rec.index = index;
  if (clock_ == 0.0) snapshot(psi_a, 1.0);

  rec.at_a = populations(psi_a, 1.0, n_max);
  StrokeResult compress = stroke(psi_a, 1.0, K, 0);
  rec.at_b = populations(compress.psi_final, K, n_max);
  Wavefunction psi_c = ladder(compress.psi_final, K, Ladder::raise);
  rec.at_c = populations(psi_c, K, n_max);
  rec.q_in = heat(rec.at_b, rec.at_c, K);

  StrokeResult expand = stroke(psi_c, K, 1.0, 1);
  rec.at_d = populations(expand.psi_final, 1.0, n_max);
  Wavefunction psi_end = ladder(expand.psi_final, 1.0, Ladder::lower);
  const Populations at_end = populations(psi_end, 1.0, n_max);
  rec.q_out = heat(rec.at_d, at_end, 1.0);

  rec.w_compress = compress.work;
  rec.w_expand = expand.work;
  rec.survival_first = compress.survival;
  rec.survival_second = expand.survival;
  rec.back_action_energy = compress.back_action_energy + expand.back_action_energy;
  rec.max_edge_density = std::max(compress.max_edge_density, expand.max_edge_density);
  rec.valid = std::abs(rec.q_in) >= kVanishingHeat;
  rec.performance = rec.valid ? (rec.q_in + rec.q_out) / rec.q_in : std::nan("");
  close_record(rec, psi_a, psi_end);
  return {std::move(psi_end), std::move(rec)};
}

CycleOutcome CycleRunner::cycle(const Wavefunction& psi_a, int index) {
  return params_.mode == MachineMode::heat_pump ? heat_pump_cycle(psi_a, index)
                                                : engine_cycle(psi_a, index);
}

CycleOutcome heat_pump_cycle(const Wavefunction& psi_a, const CycleParams& params) {
  CycleRunner runner(psi_a.grid_ptr(), params);
  return runner.heat_pump_cycle(psi_a);
}

CycleOutcome engine_cycle(const Wavefunction& psi_a, const CycleParams& params) {
  CycleRunner runner(psi_a.grid_ptr(), params);
  return runner.engine_cycle(psi_a);
}

RunResult run_cycles(const CycleParams& params, const GridPtr& grid) {
  CycleRunner runner(grid, params);
  RunResult out;
  Wavefunction psi = runner.initial_state();
  double perf_sum = 0.0;
  double survival_sum = 0.0;
  int valid = 0;
  for (int i = 0; i < params.n_cycles; ++i) {
    try {
      CycleOutcome next = runner.cycle(psi, i);
      psi = std::move(next.state);
      const CycleRecord& rec = next.record;
      survival_sum += rec.survival_first + rec.survival_second;
      if (rec.valid) {
        perf_sum += rec.performance;
        ++valid;
      } else {
        ++out.excluded_cycles;
      }
      out.records.push_back(next.record);
    } catch (const DegenerateTrajectoryError& e) {
      out.failed_cycles = params.n_cycles - i;
      out.failure = "cycle " + std::to_string(i) + ": " + e.what();
      break;
    }
  }
  out.trace = runner.take_trace();
  if (!out.records.empty()) {
    out.mean_survival = survival_sum / (2.0 * static_cast<double>(out.records.size()));
  }
  if (valid == 0) {
    throw RunFailedError(out.failure.empty()
                             ? "no cycle produced a non-vanishing heat balance"
                             : "no valid cycle: " + out.failure);
  }
  out.performance_bar = perf_sum / valid;
  return out;
}

}  // namespace qze
