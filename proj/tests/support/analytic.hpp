#pragma once

// Closed-form references for the harmonic oscillator, evaluated without the
// library's recurrence or grid.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

/// phi_n(x; f) from the physicists' Hermite polynomial and an explicit factorial.
inline double hermite_function(int n, double f, double x) {
  const double y = std::sqrt(f) * x;
  const double norm = std::pow(f / std::numbers::pi, 0.25) /
                      std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0));
  return norm * std::hermite(static_cast<unsigned>(n), y) * std::exp(-0.5 * y * y);
}

/// Composite trapezoid on [a, b] with n intervals.
inline double trapezoid(const std::function<double(double)>& g, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (g(a) + g(b));
  for (int j = 1; j < n; ++j) s += g(a + j * h);
  return s * h;
}

/// <phi_0(f1)|phi_0(f2)> for Gaussians of different width.
inline double gaussian_overlap(double f1, double f2) {
  return std::sqrt(2.0 * std::sqrt(f1 * f2) / (f1 + f2));
}

}  // namespace oracle
