#pragma once

// Pointwise kernels used in the inner loops of the propagator and projector.
//
// serial:: is the reference implementation. omp:: parallelizes element-wise
// maps with OpenMP; its reductions sum fixed-size blocks and then combine the
// block partials in order, so the result never depends on the thread count.
// The unqualified entry points pick omp:: only for grids of at least
// kParallelMinPoints, below which fork/join overhead outweighs the work.

#include <complex>
#include <cstddef>
#include <span>

namespace qze::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kParallelMinPoints = 16384;
inline constexpr std::size_t kReductionBlock = 1024;

namespace serial {
// table[j] = exp(-i * coeff * q[j]^2)
void phase_table(std::span<const double> q, double coeff, std::span<cplx> table);
void multiply(std::span<cplx> psi, std::span<const cplx> factors);
void scale(std::span<cplx> psi, cplx s);
// sum conj(bra[j]) * ket[j], no measure
cplx dot(std::span<const cplx> bra, std::span<const cplx> ket);
cplx dot_real(std::span<const double> bra, std::span<const cplx> ket);
double norm_sq(std::span<const cplx> psi);
// sum |psi[j]|^2 * w[j]
double weighted_norm_sq(std::span<const cplx> psi, std::span<const double> w);
}  // namespace serial

namespace omp {
void phase_table(std::span<const double> q, double coeff, std::span<cplx> table);
void multiply(std::span<cplx> psi, std::span<const cplx> factors);
void scale(std::span<cplx> psi, cplx s);
cplx dot(std::span<const cplx> bra, std::span<const cplx> ket);
cplx dot_real(std::span<const double> bra, std::span<const cplx> ket);
double norm_sq(std::span<const cplx> psi);
double weighted_norm_sq(std::span<const cplx> psi, std::span<const double> w);
}  // namespace omp

inline bool use_parallel(std::size_t n) { return n >= kParallelMinPoints; }

inline void phase_table(std::span<const double> q, double coeff, std::span<cplx> table) {
  use_parallel(q.size()) ? omp::phase_table(q, coeff, table) : serial::phase_table(q, coeff, table);
}
inline void multiply(std::span<cplx> psi, std::span<const cplx> factors) {
  use_parallel(psi.size()) ? omp::multiply(psi, factors) : serial::multiply(psi, factors);
}
inline void scale(std::span<cplx> psi, cplx s) {
  use_parallel(psi.size()) ? omp::scale(psi, s) : serial::scale(psi, s);
}
inline cplx dot(std::span<const cplx> bra, std::span<const cplx> ket) {
  return use_parallel(ket.size()) ? omp::dot(bra, ket) : serial::dot(bra, ket);
}
inline cplx dot_real(std::span<const double> bra, std::span<const cplx> ket) {
  return use_parallel(ket.size()) ? omp::dot_real(bra, ket) : serial::dot_real(bra, ket);
}
inline double norm_sq(std::span<const cplx> psi) {
  return use_parallel(psi.size()) ? omp::norm_sq(psi) : serial::norm_sq(psi);
}
inline double weighted_norm_sq(std::span<const cplx> psi, std::span<const double> w) {
  return use_parallel(psi.size()) ? omp::weighted_norm_sq(psi, w)
                                  : serial::weighted_norm_sq(psi, w);
}

}  // namespace qze::kernels
