#pragma once

// Spatial grid, unit convention and trap schedule.
//
// Units: distance in harmonic-oscillator lengths of the initial trap, time in
// units of 1/f (or 1/omega, see UnitConvention), energy in units of 2*pi*hbar*f.
// In these units H(t) = p^2/2 + (f(t) x)^2/2 and E_n(f) = f (n + 1/2).

#include <cstddef>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace qze {

inline constexpr std::size_t kDefaultGridPoints = 512;
inline constexpr double kDefaultGridLength = 9.3;

/// Uniform periodic lattice x[j] = -length/2 + j*dx and its FFT-ordered wavenumbers.
struct Grid {
  std::size_t n_points = 0;
  double length = 0.0;
  double dx = 0.0;
  std::vector<double> x;
  std::vector<double> k;

  double max_abs_k() const;
  bool same_as(const Grid& other) const {
    return this == &other || (n_points == other.n_points && length == other.length);
  }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws ConfigError unless n_points is a power of two >= 8 and length > 0.
GridPtr make_grid(std::size_t n_points, double length);
GridPtr default_grid();

enum class TimeBase { per_f, per_omega };

/// Prefactor c in i d(psi)/dt = c H psi. Time measured in 1/f gives c = 2*pi.
class UnitConvention {
 public:
  constexpr UnitConvention() = default;
  constexpr explicit UnitConvention(TimeBase base) : base_(base) {}

  constexpr TimeBase base() const { return base_; }
  constexpr double prefactor() const {
    return base_ == TimeBase::per_f ? 2.0 * std::numbers::pi : 1.0;
  }

  friend constexpr bool operator==(UnitConvention, UnitConvention) = default;

 private:
  TimeBase base_ = TimeBase::per_f;
};

const char* to_string(TimeBase base);
TimeBase parse_time_base(const std::string& text);

/// Linear trap-frequency ramp f(t) = f_start + (f_end - f_start) t / duration.
struct TrapProtocol {
  double f_start = 1.0;
  double f_end = 1.0;
  double duration = 1.0;

  void validate() const;
  double frequency(double t) const { return f_start + (f_end - f_start) * (t / duration); }
  /// df/dt, constant for the linear shape.
  double rate() const { return (f_end - f_start) / duration; }
};

}  // namespace qze
