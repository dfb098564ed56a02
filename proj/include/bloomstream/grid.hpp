#pragma once

// Uniform grid discretization and orthogonal cell neighborhoods.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bloomstream {

struct GridConfig {
  double resolution = 1.0;
  std::vector<double> origin;

  std::size_t dims() const { return origin.size(); }

  // Empty origin means the all-zero tuple. Throws ConfigError.
  static GridConfig make(std::size_t dims, double resolution, std::vector<double> origin = {});
};

using CellCoords = std::vector<std::int64_t>;

// c_i = floor((x_i - a_i) / r). Throws DomainError for a non-finite component,
// a length mismatch, or a coordinate outside the signed 64-bit range.
CellCoords discretize(std::span<const double> x, const GridConfig& grid);

// The cell itself followed by its 2d orthogonal neighbors, dimension-major,
// -1 before +1. Throws DomainError if a neighbor would overflow.
std::vector<CellCoords> neighborhood(std::span<const std::int64_t> cell);

}  // namespace bloomstream
