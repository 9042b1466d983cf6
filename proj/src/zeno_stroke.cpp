#include "qze/zeno_stroke.hpp"

#include <algorithm>
#include <cmath>

namespace qze {

const char* to_string(RenormMode mode) {
  return mode == RenormMode::bare ? "bare" : "post_selected";
}

RenormMode parse_renorm_mode(const std::string& text) {
  if (text == "bare") return RenormMode::bare;
  if (text == "post_selected") return RenormMode::post_selected;
  throw ConfigError("renorm_mode must be bare or post_selected, got '" + text + "'");
}

void ZenoConfig::validate() const {
  if (target_level < 0) throw ConfigError("target level must be non-negative");
  if (measurements < 0) throw ConfigError("number of measurements M must be non-negative");
  if (n_max < 1) throw ConfigError("n_max must be at least 1");
}

StrokeResult zeno_stroke(SplitStepPropagator& propagator, const Wavefunction& psi,
                         const TrapProtocol& protocol, const ZenoConfig& cfg) {
  protocol.validate();
  cfg.validate();
  // the target must be representable over the whole ramp
  eigenstate(psi.grid_ptr(), cfg.target_level, protocol.f_start);
  eigenstate(psi.grid_ptr(), cfg.target_level, protocol.f_end);

  const StepSchedule sched =
      StepSchedule::make(protocol.duration, propagator.step_params().dt);

  StrokeResult rec(psi);
  rec.energy_start = mean_energy(psi, protocol.f_start);
  rec.max_edge_density = edge_density(psi);

  std::vector<Observer> observers;
  observers.reserve(static_cast<std::size_t>(cfg.measurements) + 2);
  for (int k = 1; k <= cfg.measurements; ++k) {
    const double t_k = k == cfg.measurements
                           ? protocol.duration
                           : protocol.duration * (static_cast<double>(k) / cfg.measurements);
    observers.push_back({t_k, [&, k](Wavefunction& state, double t) {
                           const double f = protocol.frequency(t);
                           const double norm_before = state.norm_sq();
                           const double energy_before = mean_energy(state, f);
                           rec.max_edge_density = std::max(rec.max_edge_density, edge_density(state));
                           Projection proj = project(state, cfg.target_level, f);
                           if (proj.survival == 0.0) {
                             rec.psi_final = proj.state;
                             rec.survival = 0.0;
                             rec.survival_factors.push_back(0.0);
                             throw DegenerateTrajectoryError(
                                 "measurement " + std::to_string(k) + " of " +
                                     std::to_string(cfg.measurements) +
                                     " found the state orthogonal to level " +
                                     std::to_string(cfg.target_level),
                                 rec);
                           }
                           if (cfg.renorm == RenormMode::post_selected) {
                             proj.state *= std::sqrt(norm_before / proj.state.norm_sq());
                           }
                           state = std::move(proj.state);
                           rec.survival *= proj.survival;
                           rec.survival_factors.push_back(proj.survival);
                           rec.back_action_energy += energy_before - mean_energy(state, f);
                         }});
  }

  auto add_strided = [&](std::size_t stride, auto&& action) {
    if (stride == 0) return;
    for (std::size_t s = 0; s <= sched.n_steps; s += stride) {
      observers.push_back({sched.time_at(s), action});
    }
    if (sched.n_steps % stride != 0) observers.push_back({protocol.duration, action});
  };
  add_strided(cfg.record_stride, [&](Wavefunction& state, double t) {
    const double f = protocol.frequency(t);
    rec.population_trace.push_back({t, f, populations(state, f, cfg.n_max)});
  });
  add_strided(cfg.density_stride, [&](Wavefunction& state, double t) {
    rec.density_trace.push_back({t, state.density()});
  });

  rec.psi_final = propagator.evolve(psi, protocol, observers);
  rec.energy_end = mean_energy(rec.psi_final, protocol.f_end);
  rec.work = rec.energy_end - rec.energy_start;
  rec.max_edge_density = std::max(rec.max_edge_density, edge_density(rec.psi_final));
  return rec;
}

StrokeResult zeno_stroke(const Wavefunction& psi, const TrapProtocol& protocol,
                         const ZenoConfig& cfg, const StepParams& step) {
  SplitStepPropagator propagator(psi.grid_ptr(), step);
  return zeno_stroke(propagator, psi, protocol, cfg);
}

}  // namespace qze
