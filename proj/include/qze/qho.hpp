#pragma once

// Harmonic-oscillator eigenstates and the operators built on them.

#include <vector>

#include "qze/wavefunction.hpp"

namespace qze {

inline constexpr int kDefaultLevelCutoff = 32;
/// An eigenstate whose discrete norm misses 1 by more than this is not resolved.
inline constexpr double kResolutionTolerance = 1e-6;
/// Conditional survival below this is treated as an orthogonal hit.
inline constexpr double kDegenerateSurvival = 1e-15;

/// E_n(f) = f (n + 1/2)
inline double level_energy(int n, double f) { return f * (n + 0.5); }

/// Normalized Hermite functions phi_0..phi_{n_max} at frequency f, sampled on the grid.
/// Built with the three-term recurrence
///   phi_{n+1} = sqrt(2/(n+1)) y phi_n - sqrt(n/(n+1)) phi_{n-1},  y = sqrt(f) x,
/// which never forms factorials. No resolution check is made here.
std::vector<std::vector<double>> hermite_functions(const Grid& grid, int n_max, double f);

/// Discretized eigenstate phi_n(x; f). Throws ResolutionError if its norm on
/// the grid differs from 1 by more than kResolutionTolerance.
Wavefunction eigenstate(const GridPtr& grid, int n, double f);

/// Highest level n such that every phi_0..phi_n is resolved at f (-1 if none).
int highest_resolved_level(const Grid& grid, double f, int n_max = kDefaultLevelCutoff);

struct Populations {
  std::vector<double> levels;  // P_0..P_n over the resolved levels
  int requested_cutoff = 0;
  double norm_sq = 0.0;
  double residual = 0.0;  // norm_sq - sum(levels)

  int resolved_cutoff() const { return static_cast<int>(levels.size()) - 1; }
  double at(int n) const {
    return n >= 0 && n < static_cast<int>(levels.size()) ? levels[n] : 0.0;
  }
  /// sum E_n(f) P_n over the resolved levels
  double energy(double f) const;
};

/// Absolute populations P_n = |<phi_n(f)|psi>|^2, n = 0..n_max, without dividing
/// by the norm of psi. Levels that the grid cannot resolve at f are dropped
/// from the decomposition and show up in the residual.
Populations populations(const Wavefunction& psi, double f, int n_max = kDefaultLevelCutoff);

enum class Ladder { raise, lower };

/// (sqrt(f) x -+ i p / sqrt(f)) psi / sqrt(2), p applied spectrally. Not renormalized.
Wavefunction apply_ladder(const Wavefunction& psi, double f, Ladder direction);

/// p psi with p = -i d/dx, via FFT.
Wavefunction apply_momentum(const Wavefunction& psi);

struct Projection {
  Wavefunction state;
  double survival = 0.0;  // |<phi_n|psi>|^2 / ||psi||^2
};

/// psi' = <phi_n(f)|psi> phi_n(f). A hit below kDegenerateSurvival returns the exact
/// zero state with survival 0. Throws DegenerateStateError if psi has zero norm.
Projection project(const Wavefunction& psi, int n, double f);

/// <psi|H|psi> with H = p^2/2 + (f x)^2/2, not divided by the norm.
double mean_energy(const Wavefunction& psi, double f);

}  // namespace qze
