#include "qze/wavefunction.hpp"

#include <cmath>

#include "qze/error.hpp"
#include "qze/kernels.hpp"

namespace qze {

Wavefunction::Wavefunction(GridPtr grid)
    : grid_(std::move(grid)), amps_(grid_->n_points, cplx(0.0, 0.0)) {}

Wavefunction::Wavefunction(GridPtr grid, std::vector<cplx> amps)
    : grid_(std::move(grid)), amps_(std::move(amps)) {
  if (amps_.size() != grid_->n_points) {
    throw UsageError("amplitude count does not match grid size");
  }
}

double Wavefunction::norm_sq() const { return kernels::norm_sq(amps_) * grid_->dx; }

double Wavefunction::norm() const { return std::sqrt(norm_sq()); }

bool Wavefunction::all_finite() const {
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  }
  return true;
}

std::vector<double> Wavefunction::density() const {
  std::vector<double> rho(amps_.size());
  for (std::size_t j = 0; j < amps_.size(); ++j) rho[j] = std::norm(amps_[j]);
  return rho;
}

Wavefunction& Wavefunction::operator*=(cplx s) {
  kernels::scale(amps_, s);
  return *this;
}

Wavefunction& Wavefunction::operator+=(const Wavefunction& other) {
  require_same_grid(*grid_, other.grid());
  for (std::size_t j = 0; j < amps_.size(); ++j) amps_[j] += other.amps_[j];
  return *this;
}

Wavefunction& Wavefunction::operator-=(const Wavefunction& other) {
  require_same_grid(*grid_, other.grid());
  for (std::size_t j = 0; j < amps_.size(); ++j) amps_[j] -= other.amps_[j];
  return *this;
}

Wavefunction operator*(cplx s, Wavefunction psi) {
  psi *= s;
  return psi;
}

Wavefunction operator+(Wavefunction a, const Wavefunction& b) {
  a += b;
  return a;
}

Wavefunction operator-(Wavefunction a, const Wavefunction& b) {
  a -= b;
  return a;
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!a.same_as(b)) throw UsageError("wavefunctions live on different grids");
}

cplx inner(const Wavefunction& bra, const Wavefunction& ket) {
  require_same_grid(bra.grid(), ket.grid());
  return kernels::dot(bra.amps(), ket.amps()) * bra.grid().dx;
}

double distance(const Wavefunction& a, const Wavefunction& b) {
  return (a - b).norm();
}

}  // namespace qze
