#pragma once

// Synthetic Gaussian-cluster streams and purity evaluation over fixed
// evaluation horizons.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bloomstream/clustermodel.hpp"
#include "bloomstream/engine.hpp"

namespace bloomstream {

inline constexpr std::string_view kNoiseLabel = "NOISE";

struct SyntheticStreamConfig {
  std::size_t dims = 5;
  std::size_t clusters = 5;
  double noise_fraction = 0.1;         // in [0, 1)
  double min_center_separation = 4.0;  // Euclidean, data units
  double cluster_sd = 1.0;             // per dimension
  double center_box = 20.0;            // centers drawn uniformly in [0, center_box]^d
  std::size_t window_length = 2000;
  std::size_t total_instances = 2000;
  std::uint64_t seed = 1;

  // Throws ConfigError.
  void validate() const;
};

struct LabeledPoint {
  std::vector<double> x;
  std::string truth;  // cluster index as decimal, or kNoiseLabel
};

struct SyntheticStream {
  std::vector<std::vector<double>> centers;
  std::vector<LabeledPoint> points;
};

// Centers are placed by rejection sampling until every pair is at least
// min_center_separation apart (ConfigError after a bounded number of tries).
// Noise is uniform over the centers' bounding box inflated by 3 sd.
SyntheticStream generate_stream(const SyntheticStreamConfig& cfg);

struct Assignment {
  std::optional<Label> predicted;  // nullopt = OUTLIER
  std::string truth;
};

struct PurityResult {
  std::optional<double> purity;  // nullopt when every prediction is OUTLIER
  std::size_t clusters = 0;      // distinct predicted labels
  std::size_t clustered = 0;     // assignments with a predicted label
  std::size_t outliers = 0;
};

// Mean over predicted clusters of the dominant ground-truth fraction.
// OUTLIER predictions are excluded; NOISE truth is an ordinary truth bucket.
PurityResult purity(std::span<const Assignment> assignments);

struct WindowMetrics {
  std::size_t window = 0;
  std::size_t instances = 0;
  bool has_truth = false;
  PurityResult purity;
  std::size_t clusters_dynamic = 0;
  std::size_t clusters_stable = 0;
  std::uint64_t dense_events = 0;
  double outlier_fraction = 0.0;
};

// Prequential windowed evaluation: each instance is ingested, then
// classified at its arrival time; a window closes every `horizon`
// instances, sweeping expired clusters afterwards.
class HorizonEvaluator {
 public:
  // Throws ConfigError for horizon 0.
  explicit HorizonEvaluator(std::size_t horizon);

  void observe(std::optional<Label> predicted, std::optional<std::string> truth, bool dense);
  bool window_full() const { return assignments_.size() >= horizon_; }
  bool window_empty() const { return assignments_.empty(); }

  WindowMetrics close_window(BloomStream& model);

 private:
  std::size_t horizon_;
  std::size_t window_ = 0;
  std::vector<Assignment> assignments_;
  std::size_t outliers_ = 0;
  std::uint64_t dense_ = 0;
  bool has_truth_ = true;
};

// Clock is the global instance index. A trailing partial window is emitted.
std::vector<WindowMetrics> evaluate_over_horizons(BloomStream& model,
                                                  std::span<const LabeledPoint> stream,
                                                  std::size_t horizon);

}  // namespace bloomstream
