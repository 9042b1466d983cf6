#include "qze/grid.hpp"

#include <cmath>
#include <string>

#include "qze/error.hpp"

namespace qze {

double Grid::max_abs_k() const {
  double m = 0.0;
  for (double kj : k) m = std::max(m, std::abs(kj));
  return m;
}

GridPtr make_grid(std::size_t n_points, double length) {
  if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
    throw ConfigError("grid n_points must be a power of two >= 8, got " +
                      std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive, got " + std::to_string(length));
  }
  auto grid = std::make_shared<Grid>();
  grid->n_points = n_points;
  grid->length = length;
  grid->dx = length / static_cast<double>(n_points);
  grid->x.resize(n_points);
  grid->k.resize(n_points);
  const double dk = 2.0 * std::numbers::pi / length;
  const auto n = static_cast<std::ptrdiff_t>(n_points);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    grid->x[j] = -0.5 * length + static_cast<double>(j) * grid->dx;
    grid->k[j] = dk * static_cast<double>(j < n / 2 ? j : j - n);
  }
  return grid;
}

GridPtr default_grid() {
  static const GridPtr grid = make_grid(kDefaultGridPoints, kDefaultGridLength);
  return grid;
}

const char* to_string(TimeBase base) {
  return base == TimeBase::per_f ? "per_f" : "per_omega";
}

TimeBase parse_time_base(const std::string& text) {
  if (text == "per_f") return TimeBase::per_f;
  if (text == "per_omega") return TimeBase::per_omega;
  throw ConfigError("unit must be per_f or per_omega, got '" + text + "'");
}

void TrapProtocol::validate() const {
  if (!(f_start > 0.0) || !(f_end > 0.0)) {
    throw ConfigError("trap frequencies must be positive");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ConfigError("stroke duration T must be positive");
  }
}

}  // namespace qze
