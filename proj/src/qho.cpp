#include "qze/qho.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qze/error.hpp"
#include "qze/kernels.hpp"
#include "qze/spectral.hpp"

namespace qze {

namespace {

void require_frequency(double f) {
  if (!(f > 0.0) || !std::isfinite(f)) {
    throw DomainError("trap frequency must be positive, got " + std::to_string(f));
  }
}

double discrete_norm_sq(const std::vector<double>& phi, double dx) {
  double s = 0.0;
  for (double v : phi) s += v * v;
  return s * dx;
}

}  // namespace

std::vector<std::vector<double>> hermite_functions(const Grid& grid, int n_max, double f) {
  require_frequency(f);
  if (n_max < 0) throw DomainError("level index must be non-negative");
  const std::size_t n_pts = grid.n_points;
  std::vector<std::vector<double>> phi(n_max + 1, std::vector<double>(n_pts));
  const double sqrt_f = std::sqrt(f);
  const double prefactor = std::pow(f / std::numbers::pi, 0.25);
  for (std::size_t j = 0; j < n_pts; ++j) {
    const double y = sqrt_f * grid.x[j];
    phi[0][j] = prefactor * std::exp(-0.5 * y * y);
  }
  if (n_max >= 1) {
    for (std::size_t j = 0; j < n_pts; ++j) {
      phi[1][j] = std::numbers::sqrt2 * sqrt_f * grid.x[j] * phi[0][j];
    }
  }
  for (int n = 1; n < n_max; ++n) {
    const double a = std::sqrt(2.0 / (n + 1));
    const double b = std::sqrt(static_cast<double>(n) / (n + 1));
    for (std::size_t j = 0; j < n_pts; ++j) {
      phi[n + 1][j] = a * sqrt_f * grid.x[j] * phi[n][j] - b * phi[n - 1][j];
    }
  }
  return phi;
}

Wavefunction eigenstate(const GridPtr& grid, int n, double f) {
  if (n < 0) throw DomainError("level index must be non-negative");
  auto phi = hermite_functions(*grid, n, f);
  const double norm_sq = discrete_norm_sq(phi[n], grid->dx);
  if (std::abs(norm_sq - 1.0) > kResolutionTolerance) {
    throw ResolutionError("eigenstate n=" + std::to_string(n) + " at f=" + std::to_string(f) +
                          " is not resolved on the grid (norm^2 = " + std::to_string(norm_sq) +
                          ")");
  }
  // unit norm on the grid, so |phi><phi| is an exact projector there
  const double scale = 1.0 / std::sqrt(norm_sq);
  std::vector<cplx> amps(phi[n].size());
  for (std::size_t j = 0; j < amps.size(); ++j) amps[j] = phi[n][j] * scale;
  return Wavefunction(grid, std::move(amps));
}

int highest_resolved_level(const Grid& grid, double f, int n_max) {
  const auto phi = hermite_functions(grid, n_max, f);
  int last = -1;
  for (int n = 0; n <= n_max; ++n) {
    if (std::abs(discrete_norm_sq(phi[n], grid.dx) - 1.0) > kResolutionTolerance) break;
    last = n;
  }
  return last;
}

double Populations::energy(double f) const {
  double e = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) e += level_energy(static_cast<int>(n), f) * levels[n];
  return e;
}

Populations populations(const Wavefunction& psi, double f, int n_max) {
  require_frequency(f);
  if (n_max < 1) throw DomainError("population cutoff must be at least 1");
  const Grid& grid = psi.grid();
  const auto phi = hermite_functions(grid, n_max, f);
  Populations out;
  out.requested_cutoff = n_max;
  out.norm_sq = psi.norm_sq();
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double phi_norm_sq = discrete_norm_sq(phi[n], grid.dx);
    if (std::abs(phi_norm_sq - 1.0) > kResolutionTolerance) break;
    const cplx c = kernels::dot_real(phi[n], psi.amps()) * (grid.dx / std::sqrt(phi_norm_sq));
    out.levels.push_back(std::norm(c));
    total += out.levels.back();
  }
  out.residual = out.norm_sq - total;
  return out;
}

Wavefunction apply_momentum(const Wavefunction& psi) {
  const Grid& grid = psi.grid();
  Spectral& fft = thread_spectral(grid.n_points);
  std::vector<cplx> buf(grid.n_points);
  fft.forward(psi.amps(), buf);
  for (std::size_t j = 0; j < grid.n_points; ++j) buf[j] *= grid.k[j];
  fft.backward(buf);
  return Wavefunction(psi.grid_ptr(), std::move(buf));
}

Wavefunction apply_ladder(const Wavefunction& psi, double f, Ladder direction) {
  require_frequency(f);
  const Grid& grid = psi.grid();
  const Wavefunction p_psi = apply_momentum(psi);
  const double sqrt_f = std::sqrt(f);
  // raise: (sqrt(f) x - i p/sqrt(f)) / sqrt(2); lower: (sqrt(f) x + i p/sqrt(f)) / sqrt(2)
  const cplx p_coeff = cplx(0.0, direction == Ladder::raise ? -1.0 : 1.0) / sqrt_f;
  std::vector<cplx> out(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    out[j] = (sqrt_f * grid.x[j] * psi[j] + p_coeff * p_psi[j]) / std::numbers::sqrt2;
  }
  return Wavefunction(psi.grid_ptr(), std::move(out));
}

Projection project(const Wavefunction& psi, int n, double f) {
  const double norm_sq = psi.norm_sq();
  if (!(norm_sq > 0.0)) throw DegenerateStateError("cannot project a zero-norm state");
  Wavefunction phi = eigenstate(psi.grid_ptr(), n, f);
  const cplx c = inner(phi, psi);
  const double survival = std::norm(c) / norm_sq;
  if (survival < kDegenerateSurvival) {
    return {Wavefunction(psi.grid_ptr()), 0.0};
  }
  phi *= c;
  return {std::move(phi), survival};
}

double mean_energy(const Wavefunction& psi, double f) {
  require_frequency(f);
  const Grid& grid = psi.grid();
  Spectral& fft = thread_spectral(grid.n_points);
  std::vector<cplx> buf(grid.n_points);
  fft.forward(psi.amps(), buf);
  double kinetic = 0.0;
  for (std::size_t j = 0; j < grid.n_points; ++j) kinetic += 0.5 * grid.k[j] * grid.k[j] * std::norm(buf[j]);
  // Parseval: sum |psi_j|^2 dx = (dx / N) sum |psi~_k|^2
  kinetic *= grid.dx / static_cast<double>(grid.n_points);
  double potential = 0.0;
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double fx = f * grid.x[j];
    potential += 0.5 * fx * fx * std::norm(psi[j]);
  }
  potential *= grid.dx;
  return kinetic + potential;
}

}  // namespace qze
