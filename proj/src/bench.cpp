#include "bloomstream/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "bloomstream/errors.hpp"

namespace bloomstream {

namespace {

constexpr std::size_t kMaxCenterAttempts = 100000;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return sum;
}

}  // namespace

void SyntheticStreamConfig::validate() const {
  if (dims < 1) throw ConfigError("synthetic stream needs at least one dimension");
  if (clusters < 1) throw ConfigError("synthetic stream needs at least one cluster");
  if (!(noise_fraction >= 0.0 && noise_fraction < 1.0)) {
    throw ConfigError("noise fraction must lie in [0, 1)");
  }
  if (!(min_center_separation >= 0.0)) throw ConfigError("center separation must be >= 0");
  if (!(cluster_sd > 0.0)) throw ConfigError("cluster standard deviation must be positive");
  if (!(center_box > 0.0)) throw ConfigError("center box must be positive");
  if (window_length < 1) throw ConfigError("window length must be at least 1");
}

SyntheticStream generate_stream(const SyntheticStreamConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  SyntheticStream out;

  std::uniform_real_distribution<double> place(0.0, cfg.center_box);
  const double min_sq = cfg.min_center_separation * cfg.min_center_separation;
  std::size_t attempts = 0;
  while (out.centers.size() < cfg.clusters) {
    if (++attempts > kMaxCenterAttempts) {
      throw ConfigError("cannot place " + std::to_string(cfg.clusters) +
                        " centers with the requested separation inside the center box");
    }
    std::vector<double> c(cfg.dims);
    for (double& v : c) v = place(rng);
    const bool far_enough = std::all_of(out.centers.begin(), out.centers.end(), [&](const auto& o) {
      return squared_distance(c, o) >= min_sq;
    });
    if (far_enough) out.centers.push_back(std::move(c));
  }

  std::vector<double> lo(cfg.dims, std::numeric_limits<double>::infinity());
  std::vector<double> hi(cfg.dims, -std::numeric_limits<double>::infinity());
  for (const auto& c : out.centers) {
    for (std::size_t i = 0; i < cfg.dims; ++i) {
      lo[i] = std::min(lo[i], c[i] - 3.0 * cfg.cluster_sd);
      hi[i] = std::max(hi[i], c[i] + 3.0 * cfg.cluster_sd);
    }
  }

  std::bernoulli_distribution is_noise(cfg.noise_fraction);
  std::uniform_int_distribution<std::size_t> pick(0, cfg.clusters - 1);
  std::normal_distribution<double> gauss(0.0, cfg.cluster_sd);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  out.points.reserve(cfg.total_instances);
  for (std::size_t n = 0; n < cfg.total_instances; ++n) {
    LabeledPoint pt;
    pt.x.resize(cfg.dims);
    if (is_noise(rng)) {
      for (std::size_t i = 0; i < cfg.dims; ++i) pt.x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
      pt.truth = std::string(kNoiseLabel);
    } else {
      const std::size_t c = pick(rng);
      for (std::size_t i = 0; i < cfg.dims; ++i) pt.x[i] = out.centers[c][i] + gauss(rng);
      pt.truth = std::to_string(c);
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

PurityResult purity(std::span<const Assignment> assignments) {
  PurityResult result;
  std::map<Label, std::map<std::string, std::size_t>> table;
  for (const Assignment& a : assignments) {
    if (!a.predicted) {
      ++result.outliers;
      continue;
    }
    ++result.clustered;
    ++table[*a.predicted][a.truth];
  }
  result.clusters = table.size();
  if (table.empty()) return result;

  std::vector<double> fractions;
  fractions.reserve(table.size());
  for (const auto& [label, truths] : table) {
    std::size_t size = 0;
    std::size_t dominant = 0;
    for (const auto& [truth, count] : truths) {
      size += count;
      dominant = std::max(dominant, count);
    }
    fractions.push_back(static_cast<double>(dominant) / static_cast<double>(size));
  }
  // Summing in sorted order makes the result independent of label ids.
  std::sort(fractions.begin(), fractions.end());
  double sum = 0.0;
  for (double f : fractions) sum += f;
  result.purity = sum / static_cast<double>(fractions.size());
  return result;
}

HorizonEvaluator::HorizonEvaluator(std::size_t horizon) : horizon_(horizon) {
  if (horizon_ < 1) throw ConfigError("evaluation horizon must be at least 1");
  assignments_.reserve(horizon_);
}

void HorizonEvaluator::observe(std::optional<Label> predicted, std::optional<std::string> truth,
                               bool dense) {
  if (!predicted) ++outliers_;
  if (dense) ++dense_;
  if (!truth) has_truth_ = false;
  assignments_.push_back(Assignment{predicted, truth ? std::move(*truth) : std::string{}});
}

WindowMetrics HorizonEvaluator::close_window(BloomStream& model) {
  WindowMetrics m;
  m.window = window_++;
  m.instances = assignments_.size();
  m.has_truth = has_truth_ && !assignments_.empty();
  if (m.has_truth) m.purity = purity(assignments_);
  const StateCounts live = model.registry().count_states(model.clock());
  m.clusters_dynamic = live.dynamic;
  m.clusters_stable = live.stable;
  m.dense_events = dense_;
  m.outlier_fraction =
      m.instances == 0 ? 0.0 : static_cast<double>(outliers_) / static_cast<double>(m.instances);

  model.sweep_expired(model.clock());
  assignments_.clear();
  outliers_ = 0;
  dense_ = 0;
  has_truth_ = true;
  return m;
}

std::vector<WindowMetrics> evaluate_over_horizons(BloomStream& model,
                                                  std::span<const LabeledPoint> stream,
                                                  std::size_t horizon) {
  HorizonEvaluator evaluator(horizon);
  std::vector<WindowMetrics> out;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto t = static_cast<Timestamp>(i);
    const IngestOutcome outcome = model.ingest(stream[i].x, t);
    evaluator.observe(model.classify(stream[i].x, t), stream[i].truth, outcome.dense);
    if (evaluator.window_full()) out.push_back(evaluator.close_window(model));
  }
  if (!evaluator.window_empty()) out.push_back(evaluator.close_window(model));
  return out;
}

}  // namespace bloomstream
