#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qze/grid.hpp"

namespace qze {

using cplx = std::complex<double>;

/// Complex amplitudes on a Grid. The norm is allowed to drop below one:
/// bare projective measurements deplete it.
class Wavefunction {
 public:
  explicit Wavefunction(GridPtr grid);
  Wavefunction(GridPtr grid, std::vector<cplx> amps);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return amps_.size(); }

  std::span<cplx> amps() { return amps_; }
  std::span<const cplx> amps() const { return amps_; }
  cplx& operator[](std::size_t j) { return amps_[j]; }
  const cplx& operator[](std::size_t j) const { return amps_[j]; }

  /// sum |psi_j|^2 dx
  double norm_sq() const;
  double norm() const;
  bool all_finite() const;
  std::vector<double> density() const;

  Wavefunction& operator*=(cplx s);
  Wavefunction& operator+=(const Wavefunction& other);
  Wavefunction& operator-=(const Wavefunction& other);

 private:
  GridPtr grid_;
  std::vector<cplx> amps_;
};

Wavefunction operator*(cplx s, Wavefunction psi);
Wavefunction operator+(Wavefunction a, const Wavefunction& b);
Wavefunction operator-(Wavefunction a, const Wavefunction& b);

/// <bra|ket> = sum conj(bra_j) ket_j dx. Throws UsageError for mismatched grids.
cplx inner(const Wavefunction& bra, const Wavefunction& ket);

/// ||a - b|| in the grid L2 norm.
double distance(const Wavefunction& a, const Wavefunction& b);

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace qze
