#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "bloomstream/errors.hpp"
#include "bloomstream/grid.hpp"

using namespace bloomstream;

TEST(Discretize, Examples) {
  const auto grid = GridConfig::make(2, 1.5);
  const std::vector<double> x{0.7, 2.3};
  EXPECT_EQ(discretize(x, grid), (CellCoords{0, 1}));

  const auto line = GridConfig::make(1, 1.0);
  const std::vector<double> neg{-0.1};
  EXPECT_EQ(discretize(neg, line), (CellCoords{-1}));
}

TEST(Discretize, OriginMapsToZeroCell) {
  for (double r : {0.1, 1.0, 1.5, 7.25}) {
    const std::vector<double> origin{3.5, -2.0, 11.0};
    const auto grid = GridConfig::make(3, r, origin);
    EXPECT_EQ(discretize(origin, grid), (CellCoords{0, 0, 0}));
  }
}

TEST(Discretize, PointLiesInsideItsCell) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-1000.0, 1000.0);
  std::uniform_real_distribution<double> res(0.05, 10.0);
  for (int i = 0; i < 5000; ++i) {
    const double r = res(rng);
    const std::vector<double> origin{coord(rng), coord(rng), coord(rng)};
    const auto grid = GridConfig::make(3, r, origin);
    const std::vector<double> x{coord(rng), coord(rng), coord(rng)};
    const auto c = discretize(x, grid);
    for (std::size_t j = 0; j < 3; ++j) {
      const double lo = origin[j] + static_cast<double>(c[j]) * r;
      // Small slack for rounding in (x - a) / r.
      EXPECT_LE(lo, x[j] + 1e-9);
      EXPECT_LT(x[j], lo + r + 1e-9);
    }
  }
}

TEST(Discretize, RejectsBadInput) {
  const auto grid = GridConfig::make(2, 1.0);
  const std::vector<double> nan{std::numeric_limits<double>::quiet_NaN(), 0.0};
  const std::vector<double> inf{0.0, std::numeric_limits<double>::infinity()};
  const std::vector<double> short_x{0.0};
  const std::vector<double> huge{1e300, 0.0};
  EXPECT_THROW(discretize(nan, grid), DomainError);
  EXPECT_THROW(discretize(inf, grid), DomainError);
  EXPECT_THROW(discretize(short_x, grid), DomainError);
  EXPECT_THROW(discretize(huge, grid), DomainError);
}

TEST(GridConfig, RejectsBadConfiguration) {
  EXPECT_THROW(GridConfig::make(0, 1.0), ConfigError);
  EXPECT_THROW(GridConfig::make(2, 0.0), ConfigError);
  EXPECT_THROW(GridConfig::make(2, -1.0), ConfigError);
  EXPECT_THROW(GridConfig::make(2, 1.0, {0.0}), ConfigError);
}

TEST(Neighborhood, Examples) {
  const CellCoords one{5};
  EXPECT_EQ(neighborhood(one), (std::vector<CellCoords>{{5}, {4}, {6}}));
  const CellCoords two{0, 0};
  EXPECT_EQ(neighborhood(two),
            (std::vector<CellCoords>{{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}}));
}

TEST(Neighborhood, SizeDistinctnessAndL1Distance) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> coord(-1'000'000, 1'000'000);
  for (std::size_t d = 1; d <= 12; ++d) {
    CellCoords c(d);
    for (auto& v : c) v = coord(rng);
    const auto nbrs = neighborhood(c);
    ASSERT_EQ(nbrs.size(), 2 * d + 1);
    EXPECT_EQ(nbrs.front(), c);
    EXPECT_EQ(std::set<CellCoords>(nbrs.begin(), nbrs.end()).size(), nbrs.size());
    for (std::size_t i = 1; i < nbrs.size(); ++i) {
      std::int64_t l1 = 0;
      for (std::size_t j = 0; j < d; ++j) l1 += std::llabs(nbrs[i][j] - c[j]);
      EXPECT_EQ(l1, 1);
    }
  }
}

TEST(Neighborhood, Symmetry) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> coord(-50, 50);
  for (int i = 0; i < 500; ++i) {
    CellCoords c(4);
    for (auto& v : c) v = coord(rng);
    for (const auto& nb : neighborhood(c)) {
      const auto back = neighborhood(nb);
      EXPECT_NE(std::find(back.begin(), back.end(), c), back.end());
    }
  }
}

TEST(Neighborhood, RejectsBoundaryCells) {
  const CellCoords lo{std::numeric_limits<std::int64_t>::min(), 0};
  const CellCoords hi{0, std::numeric_limits<std::int64_t>::max()};
  EXPECT_THROW(neighborhood(lo), DomainError);
  EXPECT_THROW(neighborhood(hi), DomainError);
}
