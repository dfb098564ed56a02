#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bloomstream/bench.hpp"
#include "bloomstream/errors.hpp"

using namespace bloomstream;

namespace {

std::vector<Assignment> table(std::initializer_list<std::tuple<std::uint64_t, std::string, int>> rows) {
  std::vector<Assignment> out;
  for (const auto& [label, truth, count] : rows) {
    for (int i = 0; i < count; ++i) out.push_back({Label{label}, truth});
  }
  return out;
}

SketchParams reference_params() { return SketchParams::make(6935, 0.0078, 0.001, 3, 5, 1.5); }

}  // namespace

TEST(Purity, Examples) {
  EXPECT_DOUBLE_EQ(*purity(table({{1, "A", 10}, {2, "B", 7}})).purity, 1.0);
  EXPECT_DOUBLE_EQ(*purity(table({{1, "A", 8}, {1, "B", 2}, {2, "B", 5}})).purity, 0.9);
  EXPECT_DOUBLE_EQ(*purity(table({{1, "A", 6}, {1, "B", 6}})).purity, 0.5);
}

TEST(Purity, AllOutliersIsUndefined) {
  std::vector<Assignment> all(12, Assignment{std::nullopt, "A"});
  const auto r = purity(all);
  EXPECT_FALSE(r.purity.has_value());
  EXPECT_EQ(r.outliers, 12u);
  EXPECT_EQ(r.clustered, 0u);
}

TEST(Purity, OutliersAreExcludedAndNoiseIsABucket) {
  auto rows = table({{1, "A", 4}, {2, std::string(kNoiseLabel), 3}});
  rows.push_back({std::nullopt, "A"});
  const auto r = purity(rows);
  EXPECT_DOUBLE_EQ(*r.purity, 1.0);
  EXPECT_EQ(r.clusters, 2u);
  EXPECT_EQ(r.outliers, 1u);
}

TEST(Purity, RelabelingInvariance) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::uint64_t> lab(0, 9);
  std::uniform_int_distribution<int> tr(0, 4);
  std::vector<Assignment> base;
  for (int i = 0; i < 300; ++i) base.push_back({Label{lab(rng)}, std::to_string(tr(rng))});
  const double reference = *purity(base).purity;
  std::vector<std::uint64_t> perm(10);
  std::iota(perm.begin(), perm.end(), 100);
  for (int trial = 0; trial < 100; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabeled = base;
    for (auto& a : relabeled) a.predicted = Label{perm[value(*a.predicted)]};
    EXPECT_DOUBLE_EQ(*purity(relabeled).purity, reference);
  }
}

TEST(Purity, SplittingByTruthNeverLowersClusterPurity) {
  // Splitting a cluster into truth-pure pieces makes each piece pure.
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> tr(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Assignment> one;
    for (int i = 0; i < 100; ++i) one.push_back({Label{0}, std::to_string(tr(rng))});
    auto split = one;
    for (auto& a : split) a.predicted = Label{static_cast<std::uint64_t>(std::stoi(a.truth))};
    EXPECT_GE(*purity(split).purity, *purity(one).purity);
    EXPECT_DOUBLE_EQ(*purity(split).purity, 1.0);
  }
}

TEST(GenerateStream, SingleCleanClusterHasOneLabel) {
  SyntheticStreamConfig cfg;
  cfg.clusters = 1;
  cfg.noise_fraction = 0.0;
  cfg.total_instances = 500;
  const auto s = generate_stream(cfg);
  ASSERT_EQ(s.points.size(), 500u);
  for (const auto& p : s.points) EXPECT_EQ(p.truth, "0");
}

TEST(GenerateStream, DeterministicPerSeed) {
  SyntheticStreamConfig cfg;
  cfg.total_instances = 1000;
  const auto a = generate_stream(cfg);
  const auto b = generate_stream(cfg);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].x, b.points[i].x);
    EXPECT_EQ(a.points[i].truth, b.points[i].truth);
  }
  cfg.seed = 2;
  EXPECT_NE(generate_stream(cfg).points.front().x, a.points.front().x);
}

TEST(GenerateStream, NoiseFractionAndSeparation) {
  SyntheticStreamConfig cfg;
  cfg.total_instances = 100000;
  const auto s = generate_stream(cfg);
  const auto noise = std::count_if(s.points.begin(), s.points.end(),
                                   [](const LabeledPoint& p) { return p.truth == kNoiseLabel; });
  EXPECT_NEAR(static_cast<double>(noise) / 100000.0, 0.1, 0.02);
  for (std::size_t i = 0; i < s.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < s.centers.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < cfg.dims; ++k) {
        d2 += (s.centers[i][k] - s.centers[j][k]) * (s.centers[i][k] - s.centers[j][k]);
      }
      EXPECT_GE(std::sqrt(d2), cfg.min_center_separation);
    }
  }
}

TEST(GenerateStream, RejectsBadConfiguration) {
  SyntheticStreamConfig cfg;
  cfg.noise_fraction = 1.0;
  EXPECT_THROW(generate_stream(cfg), ConfigError);
  SyntheticStreamConfig crowded;
  crowded.dims = 1;
  crowded.clusters = 50;
  crowded.center_box = 10.0;
  EXPECT_THROW(generate_stream(crowded), ConfigError);
}

TEST(EvaluateOverHorizons, ShortStreamGivesOnePartialWindow) {
  SyntheticStreamConfig cfg;
  cfg.total_instances = 700;
  const auto s = generate_stream(cfg);
  BloomStream model(reference_params());
  const auto windows = evaluate_over_horizons(model, s.points, 2000);
  ASSERT_EQ(windows.size(), 1u);
  EXPECT_EQ(windows[0].instances, 700u);
}

TEST(EvaluateOverHorizons, DeterministicAndPure) {
  SyntheticStreamConfig cfg;
  cfg.total_instances = 10000;
  const auto s = generate_stream(cfg);
  BloomStream a(reference_params());
  BloomStream b(reference_params());
  const auto wa = evaluate_over_horizons(a, s.points, 2000);
  const auto wb = evaluate_over_horizons(b, s.points, 2000);
  ASSERT_EQ(wa.size(), 5u);
  ASSERT_EQ(wb.size(), 5u);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    EXPECT_EQ(wa[i].purity.purity, wb[i].purity.purity);
    EXPECT_EQ(wa[i].purity.clusters, wb[i].purity.clusters);
    EXPECT_EQ(wa[i].dense_events, wb[i].dense_events);
    EXPECT_DOUBLE_EQ(wa[i].outlier_fraction, wb[i].outlier_fraction);
    ASSERT_TRUE(wa[i].purity.purity.has_value());
    EXPECT_GE(*wa[i].purity.purity, 0.9);
  }
}

TEST(HorizonEvaluator, RejectsZeroHorizon) {
  EXPECT_THROW(HorizonEvaluator(0), ConfigError);
}
