#include "bloomstream/clustermodel.hpp"

#include <algorithm>
#include <iterator>

#include "bloomstream/errors.hpp"

namespace bloomstream {

std::string_view to_string(ClusterState state) {
  switch (state) {
    case ClusterState::dynamic:
      return "dynamic";
    case ClusterState::stable:
      return "stable";
    case ClusterState::expired:
      return "expired";
  }
  return "unknown";
}

std::string_view to_string(ClusterEvent event) {
  switch (event) {
    case ClusterEvent::none:
      return "none";
    case ClusterEvent::created:
      return "created";
    case ClusterEvent::expanded:
      return "expanded";
    case ClusterEvent::merged:
      return "merged";
  }
  return "unknown";
}

ClusterState cluster_state(Timestamp created_at, Timestamp now, double time_threshold) {
  const double age = now - created_at;
  if (age < time_threshold / 2.0) return ClusterState::dynamic;
  if (age < time_threshold) return ClusterState::stable;
  return ClusterState::expired;
}

// ---------------------------------------------------------------------------
// FlatBloomIndex

void FlatBloomIndex::reserve_slot(std::size_t slot) {
  const std::size_t needed = bitwords::words_for(slot + 1);
  if (needed <= stride_) return;
  std::vector<Word> grown(rows_ * needed, 0);
  for (std::uint64_t r = 0; r < rows_; ++r) {
    std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_,
                grown.begin() + static_cast<std::ptrdiff_t>(r * needed));
  }
  bits_ = std::move(grown);
  stride_ = needed;
}

void FlatBloomIndex::insert(std::size_t slot, const BloomSignature& signature) {
  if (signature.size_bits() != rows_) throw ConfigError("signature length does not match index");
  reserve_slot(slot);
  const std::size_t word = slot / bitwords::kWordBits;
  const Word mask = Word{1} << (slot % bitwords::kWordBits);
  signature.for_each_set_bit([&](std::size_t r) { bits_[r * stride_ + word] |= mask; });
}

void FlatBloomIndex::erase(std::size_t slot, const BloomSignature& signature) {
  if (signature.size_bits() != rows_) throw ConfigError("signature length does not match index");
  if (slot >= slot_capacity()) return;
  const std::size_t word = slot / bitwords::kWordBits;
  const Word mask = ~(Word{1} << (slot % bitwords::kWordBits));
  signature.for_each_set_bit([&](std::size_t r) { bits_[r * stride_ + word] &= mask; });
}

bool FlatBloomIndex::test(std::uint64_t row, std::size_t slot) const {
  if (slot >= slot_capacity()) return false;
  return bitwords::test(this->row(row), slot);
}

std::vector<FlatBloomIndex::Word> FlatBloomIndex::match(const CellSignature& sig,
                                                        IndexCounters* counters) const {
  if (sig.size() == 0) return std::vector<Word>(stride_, 0);
  for (std::uint64_t idx : sig) {
    if (idx >= rows_) throw ConfigError("signature index outside index rows");
  }
  const auto first = row(sig[0]);
  std::vector<Word> acc(first.begin(), first.end());
  for (std::size_t i = 1; i < sig.size(); ++i) {
    const auto next = row(sig[i]);
    for (std::size_t w = 0; w < stride_; ++w) acc[w] &= next[w];
  }
  if (counters != nullptr) {
    counters->row_fetches += sig.size();
    counters->row_ands += sig.size() - 1;
  }
  return acc;
}

bool operator==(const FlatBloomIndex& a, const FlatBloomIndex& b) {
  if (a.rows_ != b.rows_) return false;
  const std::size_t width = std::max(a.stride_, b.stride_);
  for (std::uint64_t r = 0; r < a.rows_; ++r) {
    const auto ra = a.row(r);
    const auto rb = b.row(r);
    for (std::size_t w = 0; w < width; ++w) {
      const FlatBloomIndex::Word wa = w < ra.size() ? ra[w] : 0;
      const FlatBloomIndex::Word wb = w < rb.size() ? rb[w] : 0;
      if (wa != wb) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// LabelStore

Label LabelStore::fresh() {
  const auto id = static_cast<std::uint64_t>(parent_.size());
  parent_.push_back(id);
  group_size_.push_back(1);
  group_min_.push_back(id);
  return Label{id};
}

std::uint64_t LabelStore::root(std::uint64_t x) const {
  while (parent_[x] != x) x = parent_[x];
  return x;
}

Label LabelStore::resolve(Label label) const {
  const std::uint64_t id = value(label);
  if (id >= parent_.size()) return label;
  return Label{group_min_[root(id)]};
}

Label LabelStore::merge(Label a, Label b) {
  std::uint64_t ra = root(value(a));
  std::uint64_t rb = root(value(b));
  if (ra != rb) {
    if (group_size_[ra] < group_size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    group_size_[ra] += group_size_[rb];
    group_min_[ra] = std::min(group_min_[ra], group_min_[rb]);
  }
  return Label{group_min_[ra]};
}

// ---------------------------------------------------------------------------
// ClusterRegistry

ClusterRegistry::ClusterRegistry(Geometry geometry, double time_threshold)
    : geometry_(geometry), time_threshold_(time_threshold), index_(geometry.m()) {
  if (!(time_threshold > 0.0)) throw ConfigError("time threshold must be positive");
}

const GridCluster* ClusterRegistry::find(ClusterId id) const {
  const auto it = slot_of_.find(value(id));
  if (it == slot_of_.end()) return nullptr;
  return &*slots_[it->second];
}

std::optional<ClusterId> ClusterRegistry::cluster_in_slot(std::size_t slot) const {
  if (slot >= slots_.size() || !slots_[slot]) return std::nullopt;
  return slots_[slot]->id;
}

std::vector<ClusterId> ClusterRegistry::cluster_ids() const {
  std::vector<ClusterId> ids;
  ids.reserve(size());
  for (const auto& c : slots_) {
    if (c) ids.push_back(c->id);
  }
  return ids;
}

std::size_t ClusterRegistry::allocate_slot() {
  if (!free_slots_.empty()) {
    const std::size_t slot = free_slots_.top();
    free_slots_.pop();
    return slot;
  }
  slots_.emplace_back();
  return slots_.size() - 1;
}

std::vector<ClusterId> ClusterRegistry::matching_clusters(const ClusterFragment& fragment,
                                                          IndexCounters* counters) const {
  std::vector<FlatBloomIndex::Word> hits(index_.words_per_row(), 0);
  for (const CellSignature& filter : fragment.filters) {
    const auto m = index_.match(filter, counters);
    for (std::size_t w = 0; w < hits.size(); ++w) hits[w] |= m[w];
  }
  std::vector<ClusterId> out;
  bitwords::for_each_set_bit(std::span<const FlatBloomIndex::Word>(hits), [&](std::size_t slot) {
    out.push_back(slots_[slot]->id);
  });
  return out;
}

UpdateResult ClusterRegistry::clustering_update(const ClusterFragment& fragment,
                                                std::span<const ClusterId> matches, Timestamp t) {
  UpdateResult result;
  BloomSignature signature = fragment.to_signature(geometry_);
  std::set<ClusterId> links;
  std::vector<Label> dynamic_labels;
  std::vector<Label> stable_labels;
  std::vector<ClusterId> doomed;

  for (ClusterId id : matches) {
    const GridCluster* old = find(id);
    if (old == nullptr || std::find(doomed.begin(), doomed.end(), id) != doomed.end()) continue;
    switch (state(*old, t)) {
      case ClusterState::dynamic:
        signature |= old->signature;
        dynamic_labels.push_back(resolve(old->label));
        links.insert(old->links.begin(), old->links.end());
        doomed.push_back(id);
        ++result.absorbed;
        break;
      case ClusterState::stable:
        if (links.insert(id).second) {
          stable_labels.push_back(resolve(old->label));
          ++result.linked;
        }
        break;
      case ClusterState::expired:
        doomed.push_back(id);
        ++result.expired_removed;
        break;
    }
  }
  for (ClusterId id : doomed) {
    remove_cluster(id);
    links.erase(id);
  }
  std::erase_if(links, [&](ClusterId id) { return find(id) == nullptr; });

  std::sort(dynamic_labels.begin(), dynamic_labels.end());
  std::sort(stable_labels.begin(), stable_labels.end());
  std::vector<Label> common;
  std::set_intersection(dynamic_labels.begin(), dynamic_labels.end(), stable_labels.begin(),
                        stable_labels.end(), std::back_inserter(common));
  Label label;
  if (!common.empty()) {
    label = common.front();
  } else if (!stable_labels.empty()) {
    label = stable_labels.front();
  } else if (!dynamic_labels.empty()) {
    label = dynamic_labels.front();
  } else {
    label = labels_.fresh();
  }
  for (Label other : dynamic_labels) label = labels_.merge(label, other);
  for (Label other : stable_labels) label = labels_.merge(label, other);

  if (result.absorbed == 0) {
    result.event = ClusterEvent::created;
  } else if (result.absorbed == 1) {
    result.event = ClusterEvent::expanded;
  } else {
    result.event = ClusterEvent::merged;
  }

  const std::size_t slot = allocate_slot();
  const ClusterId id{next_id_++};
  index_.insert(slot, signature);
  slots_[slot] = GridCluster{id, std::move(signature), t, label, std::move(links), slot};
  slot_of_.emplace(value(id), slot);

  result.id = id;
  result.label = label;
  return result;
}

std::optional<Label> ClusterRegistry::classify(const CellSignature& sig, Timestamp now,
                                               IndexCounters* counters) const {
  const auto hits = index_.match(sig, counters);
  const GridCluster* best = nullptr;
  bool best_stable = false;
  bitwords::for_each_set_bit(std::span<const FlatBloomIndex::Word>(hits), [&](std::size_t slot) {
    const GridCluster& c = *slots_[slot];
    const ClusterState st = state(c, now);
    if (st == ClusterState::expired) return;
    const bool is_stable = st == ClusterState::stable;
    if (best == nullptr || (is_stable && !best_stable) ||
        (is_stable == best_stable && c.created_at > best->created_at)) {
      best = &c;
      best_stable = is_stable;
    }
  });
  if (best == nullptr) return std::nullopt;
  return resolve(best->label);
}

bool ClusterRegistry::remove_cluster(ClusterId id) {
  const auto it = slot_of_.find(value(id));
  if (it == slot_of_.end()) return false;
  const std::size_t slot = it->second;
  index_.erase(slot, slots_[slot]->signature);
  slots_[slot].reset();
  slot_of_.erase(it);
  free_slots_.push(slot);
  for (auto& c : slots_) {
    if (c) c->links.erase(id);
  }
  return true;
}

std::size_t ClusterRegistry::sweep_expired(Timestamp now) {
  std::vector<ClusterId> expired;
  for (const auto& c : slots_) {
    if (c && state(*c, now) == ClusterState::expired) expired.push_back(c->id);
  }
  for (ClusterId id : expired) remove_cluster(id);
  return expired.size();
}

StateCounts ClusterRegistry::count_states(Timestamp now) const {
  StateCounts counts;
  for (const auto& c : slots_) {
    if (!c) continue;
    switch (state(*c, now)) {
      case ClusterState::dynamic:
        ++counts.dynamic;
        break;
      case ClusterState::stable:
        ++counts.stable;
        break;
      case ClusterState::expired:
        ++counts.expired;
        break;
    }
  }
  return counts;
}

FlatBloomIndex ClusterRegistry::rebuild_index() const {
  FlatBloomIndex rebuilt(geometry_.m());
  for (const auto& c : slots_) {
    if (c) rebuilt.insert(c->slot, c->signature);
  }
  return rebuilt;
}

}  // namespace bloomstream
