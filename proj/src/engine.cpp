#include "bloomstream/engine.hpp"

#include <string>

#include "bloomstream/bloom.hpp"
#include "bloomstream/errors.hpp"

namespace bloomstream {

BloomStream::BloomStream(SketchParams params, std::uint64_t seed1, std::uint64_t seed2)
    : params_((params.validate(), std::move(params))),
      grid_(GridConfig::make(params_.dims, params_.resolution, params_.origin)),
      family_(params_.geometry, seed1, seed2),
      sketch_(params_.geometry, params_.lambda),
      registry_(params_.geometry, params_.time_threshold()) {}

IngestOutcome BloomStream::ingest(std::span<const double> x, Timestamp t) {
  if (t < clock_) {
    throw MonotonicityError("ingest timestamp " + std::to_string(t) + " precedes clock " +
                            std::to_string(clock_));
  }
  ++arrivals_;
  IngestOutcome outcome;
  CellCoords cell;
  try {
    cell = discretize(x, grid_);
  } catch (const DomainError&) {
    ++stats_.rejected;
    outcome.rejected = true;
    return outcome;
  }
  clock_ = t;

  CellSignature sig = cell_signature(cell, family_, &ops_.signature);
  outcome.density = sketch_.update(sig, t);
  ++stats_.instances_seen;
  outcome.dense = is_dense(outcome.density, params_.density_threshold);
  if (!outcome.dense) return outcome;

  ++stats_.dense_events;
  const ClusterFragment fragment = make_fragment(cell, std::move(sig), family_, &ops_.fragment);
  const auto matches = registry_.matching_clusters(fragment, &ops_.matching);
  const UpdateResult update = registry_.clustering_update(fragment, matches, t);

  outcome.event = update.event;
  outcome.cluster = update.id;
  outcome.label = update.label;
  switch (update.event) {
    case ClusterEvent::created:
      ++stats_.clusters_created;
      break;
    case ClusterEvent::expanded:
      ++stats_.clusters_expanded;
      break;
    case ClusterEvent::merged:
      ++stats_.clusters_merged;
      break;
    case ClusterEvent::none:
      break;
  }
  stats_.clusters_expired += update.expired_removed;
  stats_.links_formed += update.linked;
  return outcome;
}

IngestOutcome BloomStream::ingest(std::span<const double> x) {
  return ingest(x, static_cast<Timestamp>(arrivals_));
}

std::optional<Label> BloomStream::classify(std::span<const double> x, Timestamp t,
                                           ClassifyCounters* counters) const {
  CellCoords cell;
  try {
    cell = discretize(x, grid_);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  const CellSignature sig =
      cell_signature(cell, family_, counters != nullptr ? &counters->hashing : nullptr);
  return registry_.classify(sig, t, counters != nullptr ? &counters->index : nullptr);
}

std::size_t BloomStream::sweep_expired(Timestamp t) {
  const std::size_t removed = registry_.sweep_expired(t);
  stats_.clusters_expired += removed;
  return removed;
}

ModelStats BloomStream::snapshot_stats() const {
  ModelStats out = stats_;
  out.live = registry_.count_states(clock_);
  out.countmin_fill_ratio = sketch_.fill_ratio();
  return out;
}

}  // namespace bloomstream
