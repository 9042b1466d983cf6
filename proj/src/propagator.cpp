#include "qze/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qze/error.hpp"
#include "qze/kernels.hpp"

namespace qze {

void StepParams::validate() const {
  if (!(dt > 0.0) || dt > kMaxTimeStep) {
    throw ConfigError("time step dt must be in (0, 1e-3], got " + std::to_string(dt));
  }
}

StepSchedule StepSchedule::make(double duration, double dt) {
  if (!(duration > 0.0)) throw ConfigError("stroke duration T must be positive");
  if (!(dt > 0.0)) throw ConfigError("time step dt must be positive");
  StepSchedule s;
  s.dt = dt;
  s.duration = duration;
  const double ratio = duration / dt;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(nearest * dt - duration) <= 1e-9 * duration) {
    s.n_steps = static_cast<std::size_t>(nearest);
  } else {
    s.n_steps = static_cast<std::size_t>(std::ceil(ratio));
  }
  return s;
}

std::size_t StepSchedule::nearest_boundary(double t) const {
  const double tol = 1e-12 * std::max(duration, 1.0);
  if (!(t >= -tol) || t > duration + tol) {
    throw ConfigError("observer time " + std::to_string(t) + " lies outside the stroke [0, " +
                      std::to_string(duration) + "]");
  }
  const double guess = std::round(std::max(t, 0.0) / dt);
  auto s = static_cast<std::size_t>(guess);
  if (s >= n_steps) return n_steps;
  // the shortened last step moves the final boundary; compare against it explicitly
  if (std::abs(t - duration) < std::abs(t - time_at(s))) return n_steps;
  return s;
}

SplitStepPropagator::SplitStepPropagator(GridPtr grid, StepParams step)
    : grid_(std::move(grid)), step_(step), fft_(grid_->n_points), k_abs_(grid_->k) {
  step_.validate();
}

std::span<const cplx> SplitStepPropagator::potential_half_kick(double f, double dt) {
  for (auto& slot : potential_) {
    if (slot.f == f && slot.dt == dt) return slot.table;
  }
  PhaseSlot& slot = potential_[next_slot_];
  next_slot_ = 1 - next_slot_;
  slot.f = f;
  slot.dt = dt;
  slot.table.resize(grid_->n_points);
  // exp(-i c (f x)^2/2 dt/2)
  const double coeff = step_.unit.prefactor() * f * f * dt / 4.0;
  kernels::phase_table(grid_->x, coeff, slot.table);
  return slot.table;
}

std::span<const cplx> SplitStepPropagator::kinetic_factor(double dt) {
  if (kinetic_.dt != dt) {
    kinetic_.dt = dt;
    kinetic_.table.resize(grid_->n_points);
    // exp(-i c k^2/2 dt)
    kernels::phase_table(k_abs_, step_.unit.prefactor() * dt / 2.0, kinetic_.table);
  }
  return kinetic_.table;
}

void SplitStepPropagator::step(Wavefunction& psi, const TrapProtocol& protocol, double t,
                               double dt) {
  require_same_grid(psi.grid(), *grid_);
  if (t + dt > protocol.duration + 1e-12) {
    throw UsageError("split step from t=" + std::to_string(t) + " overshoots stroke end " +
                     std::to_string(protocol.duration));
  }
  const double t_end = std::min(t + dt, protocol.duration);
  kernels::multiply(psi.amps(), potential_half_kick(protocol.frequency(t), dt));
  fft_.forward(psi.amps());
  kernels::multiply(psi.amps(), kinetic_factor(dt));
  fft_.backward(psi.amps());
  kernels::multiply(psi.amps(), potential_half_kick(protocol.frequency(t_end), dt));
}

Wavefunction SplitStepPropagator::evolve(Wavefunction psi, const TrapProtocol& protocol,
                                         std::span<const Observer> observers) {
  protocol.validate();
  const StepSchedule sched = StepSchedule::make(protocol.duration, step_.dt);

  std::vector<std::size_t> at(observers.size());
  for (std::size_t i = 0; i < observers.size(); ++i) {
    at[i] = sched.nearest_boundary(observers[i].time);
  }
  std::vector<std::size_t> order(observers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return at[a] < at[b]; });

  std::size_t next = 0;
  auto run_observers = [&](std::size_t boundary) {
    while (next < order.size() && at[order[next]] == boundary) {
      observers[order[next]].action(psi, sched.time_at(boundary));
      ++next;
    }
  };

  run_observers(0);
  for (std::size_t s = 0; s < sched.n_steps; ++s) {
    step(psi, protocol, sched.time_at(s), sched.step_length(s));
    run_observers(s + 1);
  }
  if (!psi.all_finite()) throw Error("propagation produced non-finite amplitudes");
  return psi;
}

Wavefunction split_step(const Wavefunction& psi, const TrapProtocol& protocol, double t,
                        const StepParams& step) {
  SplitStepPropagator prop(psi.grid_ptr(), step);
  Wavefunction out = psi;
  prop.step(out, protocol, t);
  return out;
}

Wavefunction evolve(Wavefunction psi, const TrapProtocol& protocol, const StepParams& step,
                    std::span<const Observer> observers) {
  SplitStepPropagator prop(psi.grid_ptr(), step);
  return prop.evolve(std::move(psi), protocol, observers);
}

double edge_density(const Wavefunction& psi) {
  return std::max(std::norm(psi[0]), std::norm(psi[psi.size() - 1]));
}

}  // namespace qze
