#include "qze/kernels.hpp"

#include <cmath>
#include <vector>

namespace qze::kernels {

namespace serial {

void phase_table(std::span<const double> q, double coeff, std::span<cplx> table) {
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double angle = coeff * q[j] * q[j];
    table[j] = cplx(std::cos(angle), -std::sin(angle));
  }
}

void multiply(std::span<cplx> psi, std::span<const cplx> factors) {
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= factors[j];
}

void scale(std::span<cplx> psi, cplx s) {
  for (auto& v : psi) v *= s;
}

cplx dot(std::span<const cplx> bra, std::span<const cplx> ket) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < ket.size(); ++j) {
    const cplx& b = bra[j];
    const cplx& k = ket[j];
    re += b.real() * k.real() + b.imag() * k.imag();
    im += b.real() * k.imag() - b.imag() * k.real();
  }
  return {re, im};
}

cplx dot_real(std::span<const double> bra, std::span<const cplx> ket) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < ket.size(); ++j) {
    re += bra[j] * ket[j].real();
    im += bra[j] * ket[j].imag();
  }
  return {re, im};
}

double norm_sq(std::span<const cplx> psi) {
  double s = 0.0;
  for (const auto& v : psi) s += v.real() * v.real() + v.imag() * v.imag();
  return s;
}

double weighted_norm_sq(std::span<const cplx> psi, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    s += w[j] * (psi[j].real() * psi[j].real() + psi[j].imag() * psi[j].imag());
  }
  return s;
}

}  // namespace serial

namespace omp {

namespace {

// Deterministic blocked reduction: partials per fixed block, combined in block order.
template <typename T, typename BlockFn>
T blocked_sum(std::size_t n, BlockFn&& block_fn) {
  const std::size_t n_blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(n_blocks);
  const auto nb = static_cast<std::ptrdiff_t>(n_blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[b] = block_fn(lo, hi);
  }
  T total{};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

void phase_table(std::span<const double> q, double coeff, std::span<cplx> table) {
  const auto n = static_cast<std::ptrdiff_t>(q.size());
#pragma omp parallel for simd schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double angle = coeff * q[j] * q[j];
    table[j] = cplx(std::cos(angle), -std::sin(angle));
  }
}

void multiply(std::span<cplx> psi, std::span<const cplx> factors) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) psi[j] *= factors[j];
}

void scale(std::span<cplx> psi, cplx s) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) psi[j] *= s;
}

cplx dot(std::span<const cplx> bra, std::span<const cplx> ket) {
  return blocked_sum<cplx>(ket.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::dot(bra.subspan(lo, hi - lo), ket.subspan(lo, hi - lo));
  });
}

cplx dot_real(std::span<const double> bra, std::span<const cplx> ket) {
  return blocked_sum<cplx>(ket.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::dot_real(bra.subspan(lo, hi - lo), ket.subspan(lo, hi - lo));
  });
}

double norm_sq(std::span<const cplx> psi) {
  return blocked_sum<double>(psi.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::norm_sq(psi.subspan(lo, hi - lo));
  });
}

double weighted_norm_sq(std::span<const cplx> psi, std::span<const double> w) {
  return blocked_sum<double>(psi.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::weighted_norm_sq(psi.subspan(lo, hi - lo), w.subspan(lo, hi - lo));
  });
}

}  // namespace omp

}  // namespace qze::kernels
