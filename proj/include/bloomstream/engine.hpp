#pragma once

// End-to-end stream clustering model. Per instance: discretize, hash to a
// cell signature, update the decayed count-min sketch, and when the cell is
// dense, build its fragment, match it against the registry and run the
// clustering update.

#include <cstdint>
#include <optional>
#include <span>

#include "bloomstream/clustermodel.hpp"
#include "bloomstream/countmin.hpp"
#include "bloomstream/grid.hpp"
#include "bloomstream/hashcore.hpp"
#include "bloomstream/params.hpp"

namespace bloomstream {

struct IngestOutcome {
  double density = 0.0;
  bool dense = false;
  bool rejected = false;
  ClusterEvent event = ClusterEvent::none;
  std::optional<ClusterId> cluster;
  std::optional<Label> label;
};

// Work done by ingest. `signature` covers the per-instance density path;
// `fragment` and `matching` cover clustering updates of dense cells.
struct OpCounters {
  HashCounters signature;
  HashCounters fragment;
  IndexCounters matching;
};

// Work done by one or more classify calls.
struct ClassifyCounters {
  HashCounters hashing;
  IndexCounters index;
};

struct ModelStats {
  std::uint64_t instances_seen = 0;  // accepted ingests
  std::uint64_t rejected = 0;
  std::uint64_t dense_events = 0;
  std::uint64_t clusters_created = 0;
  std::uint64_t clusters_expanded = 0;
  std::uint64_t clusters_merged = 0;
  std::uint64_t clusters_expired = 0;  // removed after expiry
  std::uint64_t links_formed = 0;
  StateCounts live;
  double countmin_fill_ratio = 0.0;
};

// One logical stream per instance. ingest and sweep_expired are serialized;
// classify is const and may run concurrently with other classify calls.
class BloomStream {
 public:
  explicit BloomStream(SketchParams params, std::uint64_t seed1 = HashFamily::kDefaultSeed1,
                       std::uint64_t seed2 = HashFamily::kDefaultSeed2);

  // Non-finite or wrongly sized input is rejected and counted; the model is
  // untouched. Throws MonotonicityError if t is earlier than the clock.
  IngestOutcome ingest(std::span<const double> x, Timestamp t);

  // Uses the arrival index (accepted plus rejected instances so far) as t.
  IngestOutcome ingest(std::span<const double> x);

  std::optional<Label> classify(std::span<const double> x, Timestamp t,
                                ClassifyCounters* counters = nullptr) const;

  std::size_t sweep_expired(Timestamp t);

  // Live cluster counts are evaluated at the model clock.
  ModelStats snapshot_stats() const;

  const OpCounters& op_counters() const { return ops_; }
  void reset_op_counters() { ops_ = {}; }

  const SketchParams& params() const { return params_; }
  const GridConfig& grid() const { return grid_; }
  const HashFamily& family() const { return family_; }
  const DecayedCountMin& sketch() const { return sketch_; }
  const ClusterRegistry& registry() const { return registry_; }
  Timestamp clock() const { return clock_; }

 private:
  SketchParams params_;
  GridConfig grid_;
  HashFamily family_;
  DecayedCountMin sketch_;
  ClusterRegistry registry_;
  ModelStats stats_;
  OpCounters ops_;
  Timestamp clock_ = 0.0;
  std::uint64_t arrivals_ = 0;
};

}  // namespace bloomstream
