#include "bloomstream/grid.hpp"

#include <cmath>
#include <limits>

#include "bloomstream/errors.hpp"

namespace bloomstream {

GridConfig GridConfig::make(std::size_t dims, double resolution, std::vector<double> origin) {
  if (dims < 1) throw ConfigError("grid needs at least one dimension");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw ConfigError("grid resolution must be positive and finite");
  }
  if (origin.empty()) origin.assign(dims, 0.0);
  if (origin.size() != dims) throw ConfigError("grid origin length must equal dimensionality");
  for (double a : origin) {
    if (!std::isfinite(a)) throw ConfigError("grid origin must be finite");
  }
  return GridConfig{resolution, std::move(origin)};
}

CellCoords discretize(std::span<const double> x, const GridConfig& grid) {
  if (x.size() != grid.dims()) throw DomainError("instance dimensionality does not match the grid");
  // 2^63 is exactly representable; anything at or above it cannot be an int64.
  constexpr double kLimit = 9223372036854775808.0;
  CellCoords cell(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw DomainError("non-finite instance component");
    const double c = std::floor((x[i] - grid.origin[i]) / grid.resolution);
    if (!(c >= -kLimit && c < kLimit)) throw DomainError("grid coordinate exceeds 64-bit range");
    cell[i] = static_cast<std::int64_t>(c);
  }
  return cell;
}

std::vector<CellCoords> neighborhood(std::span<const std::int64_t> cell) {
  constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::vector<CellCoords> out;
  out.reserve(2 * cell.size() + 1);
  out.emplace_back(cell.begin(), cell.end());
  for (std::size_t dim = 0; dim < cell.size(); ++dim) {
    if (cell[dim] == kMin || cell[dim] == kMax) {
      throw DomainError("cell coordinate at the 64-bit boundary has no neighbor");
    }
    for (std::int64_t step : {-1, 1}) {
      CellCoords n(cell.begin(), cell.end());
      n[dim] += step;
      out.push_back(std::move(n));
    }
  }
  return out;
}

}  // namespace bloomstream
