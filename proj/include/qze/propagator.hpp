#pragma once

// Strang split-step propagation under H(t) = p^2/2 + (f(t) x)^2/2.
//
// One step from t to t+dt:
//   psi <- exp(-i c V(f(t))    dt/2) psi
//   psi <- F^-1 exp(-i c k^2/2 dt) F psi
//   psi <- exp(-i c V(f(t+dt)) dt/2) psi
// with c the unit-convention prefactor. Both factors are unitary, so the norm
// is preserved up to rounding.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "qze/grid.hpp"
#include "qze/spectral.hpp"
#include "qze/wavefunction.hpp"

namespace qze {

inline constexpr double kDefaultTimeStep = 1e-5;
inline constexpr double kMaxTimeStep = 1e-3;

struct StepParams {
  double dt = kDefaultTimeStep;
  UnitConvention unit{};

  void validate() const;
};

/// Step boundaries for a stroke of length T: t_s = s*dt for s < n_steps and
/// t_{n_steps} = T. If T is not a multiple of dt (1e-9 relative) the last step
/// is shortened to land on T.
struct StepSchedule {
  std::size_t n_steps = 0;
  double dt = 0.0;
  double duration = 0.0;

  static StepSchedule make(double duration, double dt);
  double time_at(std::size_t s) const {
    return s >= n_steps ? duration : static_cast<double>(s) * dt;
  }
  double step_length(std::size_t s) const { return time_at(s + 1) - time_at(s); }
  /// Boundary index closest to t; throws ConfigError outside [0, T].
  std::size_t nearest_boundary(double t) const;
};

/// A callback run on the state at a step boundary. It may modify the state.
struct Observer {
  double time = 0.0;
  std::function<void(Wavefunction& psi, double t)> action;
};

/// Owns the FFT plan and phase tables of one propagation run. Not thread-safe;
/// use one instance per run.
class SplitStepPropagator {
 public:
  SplitStepPropagator(GridPtr grid, StepParams step);

  const StepParams& step_params() const { return step_; }
  const GridPtr& grid() const { return grid_; }

  /// One Strang step from t to t + dt, in place. Throws UsageError if t + dt
  /// overshoots the protocol duration.
  void step(Wavefunction& psi, const TrapProtocol& protocol, double t, double dt);
  void step(Wavefunction& psi, const TrapProtocol& protocol, double t) {
    step(psi, protocol, t, step_.dt);
  }

  /// Propagates from t = 0 to t = T, running observers at their (quantized)
  /// boundaries. Observers sharing a boundary run in the order given.
  Wavefunction evolve(Wavefunction psi, const TrapProtocol& protocol,
                      std::span<const Observer> observers = {});

 private:
  struct PhaseSlot {
    double f = -1.0;
    double dt = -1.0;
    std::vector<cplx> table;
  };
  std::span<const cplx> potential_half_kick(double f, double dt);
  std::span<const cplx> kinetic_factor(double dt);

  GridPtr grid_;
  StepParams step_;
  Spectral fft_;
  std::array<PhaseSlot, 2> potential_{};
  std::size_t next_slot_ = 0;
  PhaseSlot kinetic_{};
  std::vector<double> k_abs_;
};

Wavefunction split_step(const Wavefunction& psi, const TrapProtocol& protocol, double t,
                        const StepParams& step);
Wavefunction evolve(Wavefunction psi, const TrapProtocol& protocol, const StepParams& step,
                    std::span<const Observer> observers = {});

/// Largest |psi|^2 over the first and last grid point; a wrap-around diagnostic.
double edge_density(const Wavefunction& psi);

}  // namespace qze
