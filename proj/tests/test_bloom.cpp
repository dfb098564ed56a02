#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "bloomstream/bloom.hpp"
#include "bloomstream/errors.hpp"

using namespace bloomstream;

namespace {

const Geometry kGeometry{7, 10009};
const HashFamily kFamily(kGeometry);

CellSignature random_sig(std::mt19937_64& rng, const HashFamily& family = kFamily) {
  std::uniform_int_distribution<std::int64_t> coord(-1'000'000'000, 1'000'000'000);
  const std::vector<std::int64_t> c{coord(rng), coord(rng), coord(rng)};
  return cell_signature(c, family);
}

BloomSignature random_filter(std::mt19937_64& rng, int cells) {
  BloomSignature s(kGeometry);
  for (int i = 0; i < cells; ++i) s.insert(random_sig(rng));
  return s;
}

}  // namespace

TEST(FilterFromSignature, PopcountIsK) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(filter_from_signature(random_sig(rng), kGeometry).popcount(), 7u);
  }
}

TEST(FilterFromSignature, DistinctCellsGiveDistinctFilters) {
  std::mt19937_64 rng(32);
  int equal = 0;
  for (int i = 0; i < 100000; ++i) {
    if (random_sig(rng) == random_sig(rng)) ++equal;
  }
  EXPECT_EQ(equal, 0);
}

TEST(FilterFromSignature, Deterministic) {
  const std::vector<std::int64_t> zero{0, 0, 0};
  EXPECT_EQ(filter_from_signature(cell_signature(zero, kFamily), kGeometry),
            filter_from_signature(cell_signature(zero, kFamily), kGeometry));
}

TEST(MakeFragment, HasTwoDPlusOneFilters) {
  const CellCoords cell{3, -4};
  const auto fragment = make_fragment(cell, kFamily);
  ASSERT_EQ(fragment.size(), 5u);
  EXPECT_EQ(fragment.cells.front(), cell);
  EXPECT_EQ(fragment.filters.front(), cell_signature(cell, kFamily));
  for (std::size_t i = 0; i < fragment.size(); ++i) {
    EXPECT_EQ(fragment.filters[i], cell_signature(fragment.cells[i], kFamily));
  }
}

TEST(MakeFragment, ReusedCenterCountsOnlyNeighbors) {
  const CellCoords cell(5, 1);
  HashCounters fresh;
  HashCounters reused;
  const auto a = make_fragment(cell, kFamily, &fresh);
  const auto b = make_fragment(cell, cell_signature(cell, kFamily), kFamily, &reused);
  EXPECT_EQ(a.filters, b.filters);
  EXPECT_EQ(fresh.base, 2u * 11);
  EXPECT_EQ(reused.base, 2u * 10);
  EXPECT_EQ(reused.derived, 7u * 10);
}

TEST(Contains, NoFalseNegatives) {
  std::mt19937_64 rng(33);
  BloomSignature cluster(kGeometry);
  std::vector<CellSignature> inserted;
  for (int i = 0; i < 500; ++i) {
    inserted.push_back(random_sig(rng));
    cluster.insert(inserted.back());
  }
  for (const auto& s : inserted) EXPECT_TRUE(contains(s, cluster));
}

TEST(Contains, EmptyClusterContainsNothing) {
  std::mt19937_64 rng(34);
  const BloomSignature empty(kGeometry);
  for (int i = 0; i < 100; ++i) EXPECT_FALSE(contains(random_sig(rng), empty));
}

TEST(Contains, FalsePositiveRateAtReportedGeometry) {
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<std::int64_t> coord(-1'000'000'000, 1'000'000'000);
  std::set<std::vector<std::int64_t>> inserted_cells;
  BloomSignature cluster(kGeometry);
  while (inserted_cells.size() < 6935) {
    std::vector<std::int64_t> c{coord(rng), coord(rng)};
    if (inserted_cells.insert(c).second) cluster.insert(cell_signature(c, kFamily));
  }
  int fp = 0;
  int probes = 0;
  while (probes < 100000) {
    std::vector<std::int64_t> c{coord(rng), coord(rng)};
    if (inserted_cells.count(c) != 0) continue;
    ++probes;
    fp += contains(cell_signature(c, kFamily), cluster);
  }
  const double rate = static_cast<double>(fp) / probes;
  EXPECT_GE(rate, 0.005);
  EXPECT_LE(rate, 0.011);
}

TEST(Contains, GeometryMismatch) {
  const HashFamily small(Geometry{3, 101});
  const std::vector<std::int64_t> c{1};
  EXPECT_THROW(contains(cell_signature(c, small), BloomSignature(kGeometry)), ConfigError);
  EXPECT_THROW(contains(BloomSignature(Geometry{3, 101}), BloomSignature(kGeometry)),
               ConfigError);
}

TEST(Unite, Examples) {
  std::mt19937_64 rng(36);
  const auto a = random_filter(rng, 20);
  EXPECT_EQ(unite(a, BloomSignature(kGeometry)), a);

  const auto s1 = random_sig(rng);
  const auto s2 = random_sig(rng);
  bool disjoint = true;
  for (std::size_t i = 0; i < 7; ++i) disjoint = disjoint && s1[i] != s2[i];
  ASSERT_TRUE(disjoint);
  EXPECT_EQ(unite(filter_from_signature(s1, kGeometry), filter_from_signature(s2, kGeometry))
                .popcount(),
            14u);
  EXPECT_THROW(unite(a, BloomSignature(Geometry{3, 101})), ConfigError);
}

TEST(Unite, AlgebraicProperties) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_filter(rng, 30);
    const auto b = random_filter(rng, 30);
    const auto c = random_filter(rng, 30);
    EXPECT_EQ(unite(a, b), unite(b, a));
    EXPECT_EQ(unite(unite(a, b), c), unite(a, unite(b, c)));
    EXPECT_EQ(unite(a, a), a);
    const auto ab = unite(a, b);
    EXPECT_TRUE(contains(a, ab));
    EXPECT_TRUE(contains(b, ab));
    EXPECT_GE(ab.popcount(), std::max(a.popcount(), b.popcount()));
  }
}

TEST(Unite, PreservesMembership) {
  std::mt19937_64 rng(38);
  BloomSignature a(kGeometry);
  std::vector<CellSignature> members;
  for (int i = 0; i < 40; ++i) {
    members.push_back(random_sig(rng));
    a.insert(members.back());
  }
  const auto b = random_filter(rng, 40);
  const auto ab = unite(a, b);
  for (const auto& s : members) EXPECT_TRUE(contains(s, ab));
}
