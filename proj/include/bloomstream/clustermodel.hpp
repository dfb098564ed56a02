#pragma once

// Cluster registry: grid clusters stored as bloom signatures, indexed by a
// transposed ("flat") bloom index, with a dynamic/stable/expired lifecycle
// and label groups shared by linked clusters.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bloomstream/bitwords.hpp"
#include "bloomstream/bloom.hpp"
#include "bloomstream/countmin.hpp"
#include "bloomstream/hashcore.hpp"

namespace bloomstream {

enum class ClusterId : std::uint64_t {};
enum class Label : std::uint64_t {};

constexpr std::uint64_t value(ClusterId id) { return static_cast<std::uint64_t>(id); }
constexpr std::uint64_t value(Label label) { return static_cast<std::uint64_t>(label); }

enum class ClusterState : std::uint8_t { dynamic, stable, expired };

std::string_view to_string(ClusterState state);

// Age a = now - created_at against T_th: dynamic if a < T_th/2, stable if
// T_th/2 <= a < T_th, expired if a >= T_th.
ClusterState cluster_state(Timestamp created_at, Timestamp now, double time_threshold);

// Instrumentation for index lookups.
struct IndexCounters {
  std::uint64_t row_fetches = 0;
  std::uint64_t row_ands = 0;
  friend bool operator==(const IndexCounters&, const IndexCounters&) = default;
};

// m rows, one per signature bit; bit j of row i is set iff the cluster in
// slot j has bit i of its signature set. A k-index query is answered by
// AND-ing the k addressed rows. Rows widen one word at a time as slots are
// allocated.
class FlatBloomIndex {
 public:
  using Word = bitwords::Word;

  explicit FlatBloomIndex(std::uint64_t rows = 0) : rows_(rows) {}

  std::uint64_t rows() const { return rows_; }
  std::size_t slot_capacity() const { return stride_ * bitwords::kWordBits; }
  std::size_t words_per_row() const { return stride_; }

  void insert(std::size_t slot, const BloomSignature& signature);
  void erase(std::size_t slot, const BloomSignature& signature);

  bool test(std::uint64_t row, std::size_t slot) const;
  std::span<const Word> row(std::uint64_t r) const {
    return {bits_.data() + r * stride_, stride_};
  }

  // Slots whose signature contains every index of sig: exactly k row fetches
  // and k-1 row ANDs.
  std::vector<Word> match(const CellSignature& sig, IndexCounters* counters = nullptr) const;

  // Same set bits in every row; trailing all-zero words are ignored.
  friend bool operator==(const FlatBloomIndex& a, const FlatBloomIndex& b);

 private:
  void reserve_slot(std::size_t slot);

  std::uint64_t rows_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

// Union-find over labels. A group resolves to its smallest member label.
class LabelStore {
 public:
  Label fresh();
  Label resolve(Label label) const;
  // Joins the groups of a and b; returns the canonical label of the result.
  Label merge(Label a, Label b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::uint64_t root(std::uint64_t x) const;

  std::vector<std::uint64_t> parent_;
  std::vector<std::uint64_t> group_size_;
  std::vector<std::uint64_t> group_min_;
};

struct GridCluster {
  ClusterId id{};
  BloomSignature signature;
  Timestamp created_at = 0.0;
  Label label{};
  std::set<ClusterId> links;  // stable clusters this one is linked to
  std::size_t slot = 0;
};

enum class ClusterEvent : std::uint8_t { none, created, expanded, merged };

std::string_view to_string(ClusterEvent event);

struct UpdateResult {
  ClusterId id{};
  Label label{};
  ClusterEvent event = ClusterEvent::none;
  std::size_t absorbed = 0;  // dynamic clusters unioned in and removed
  std::size_t linked = 0;    // stable clusters linked
  std::size_t expired_removed = 0;
};

struct StateCounts {
  std::size_t dynamic = 0;
  std::size_t stable = 0;
  std::size_t expired = 0;
  std::size_t total() const { return dynamic + stable + expired; }
};

// Single writer: clustering_update, remove_cluster and sweep_expired must be
// serialized and must not overlap classify. Concurrent classify calls are
// safe.
class ClusterRegistry {
 public:
  ClusterRegistry(Geometry geometry, double time_threshold);

  const Geometry& geometry() const { return geometry_; }
  double time_threshold() const { return time_threshold_; }

  std::size_t size() const { return slot_of_.size(); }
  const GridCluster* find(ClusterId id) const;
  std::optional<ClusterId> cluster_in_slot(std::size_t slot) const;
  // Live cluster ids, ascending by slot.
  std::vector<ClusterId> cluster_ids() const;

  ClusterState state(const GridCluster& cluster, Timestamp now) const {
    return cluster_state(cluster.created_at, now, time_threshold_);
  }

  // Clusters whose signature contains at least one fragment filter, in
  // ascending slot order, each at most once.
  std::vector<ClusterId> matching_clusters(const ClusterFragment& fragment,
                                           IndexCounters* counters = nullptr) const;

  // Creates a cluster from the fragment, absorbs dynamic matches, links
  // stable ones, drops expired ones, then picks the label: a label shared by
  // dynamic and stable matches, else a stable one, else a dynamic one, else
  // a fresh label. Ties resolve to the smallest label id. Every matched
  // label group is merged into the chosen one.
  UpdateResult clustering_update(const ClusterFragment& fragment,
                                 std::span<const ClusterId> matches, Timestamp t);

  // Label of the best non-expired cluster containing sig, or nullopt for an
  // outlier. Preference: stable over dynamic, then newest, then lowest slot.
  std::optional<Label> classify(const CellSignature& sig, Timestamp now,
                                IndexCounters* counters = nullptr) const;

  // Returns false for an unknown id.
  bool remove_cluster(ClusterId id);

  // Removes every expired cluster; returns how many.
  std::size_t sweep_expired(Timestamp now);

  StateCounts count_states(Timestamp now) const;

  Label resolve(Label label) const { return labels_.resolve(label); }
  const FlatBloomIndex& index() const { return index_; }
  FlatBloomIndex rebuild_index() const;

 private:
  std::size_t allocate_slot();

  Geometry geometry_;
  double time_threshold_;
  std::vector<std::optional<GridCluster>> slots_;
  std::unordered_map<std::uint64_t, std::size_t> slot_of_;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> free_slots_;
  FlatBloomIndex index_;
  LabelStore labels_;
  std::uint64_t next_id_ = 0;
};

}  // namespace bloomstream
