#include "bloomstream/bloom.hpp"

#include "bloomstream/errors.hpp"

namespace bloomstream {

namespace {

void require_same(const Geometry& a, const Geometry& b) {
  if (!(a == b)) throw ConfigError("bloom filter geometry mismatch");
}

void require_fits(const CellSignature& sig, const Geometry& geometry) {
  if (sig.size() != geometry.k) throw ConfigError("signature length does not match filter k");
  for (std::uint64_t idx : sig) {
    if (idx >= geometry.m()) throw ConfigError("signature index outside filter");
  }
}

}  // namespace

BloomSignature::BloomSignature(Geometry geometry)
    : geometry_(geometry), words_(bitwords::words_for(geometry.m()), 0) {}

void BloomSignature::set(std::uint64_t bit) {
  if (bit >= size_bits()) throw ConfigError("bit index outside filter");
  bitwords::set(words_, bit);
}

void BloomSignature::insert(const CellSignature& sig) {
  require_fits(sig, geometry_);
  for (std::uint64_t idx : sig) bitwords::set(words_, idx);
}

BloomSignature& BloomSignature::operator|=(const BloomSignature& other) {
  require_same(geometry_, other.geometry_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BloomSignature filter_from_signature(const CellSignature& sig, Geometry geometry) {
  BloomSignature filter(geometry);
  filter.insert(sig);
  return filter;
}

bool contains(const CellSignature& sig, const BloomSignature& cluster) {
  require_fits(sig, cluster.geometry());
  for (std::uint64_t idx : sig) {
    if (!cluster.test(idx)) return false;
  }
  return true;
}

bool contains(const BloomSignature& query, const BloomSignature& cluster) {
  require_same(query.geometry(), cluster.geometry());
  const auto q = query.words();
  const auto c = cluster.words();
  for (std::size_t i = 0; i < q.size(); ++i) {
    if ((q[i] & ~c[i]) != 0) return false;
  }
  return true;
}

BloomSignature unite(const BloomSignature& a, const BloomSignature& b) {
  BloomSignature out = a;
  out |= b;
  return out;
}

BloomSignature ClusterFragment::to_signature(Geometry geometry) const {
  BloomSignature sig(geometry);
  for (const CellSignature& f : filters) sig.insert(f);
  return sig;
}

ClusterFragment make_fragment(const CellCoords& cell, const HashFamily& family,
                              HashCounters* counters) {
  return make_fragment(cell, cell_signature(cell, family, counters), family, counters);
}

ClusterFragment make_fragment(const CellCoords& cell, CellSignature center,
                              const HashFamily& family, HashCounters* counters) {
  ClusterFragment fragment;
  fragment.cells = neighborhood(cell);
  fragment.filters.reserve(fragment.cells.size());
  fragment.filters.push_back(std::move(center));
  for (std::size_t i = 1; i < fragment.cells.size(); ++i) {
    fragment.filters.push_back(cell_signature(fragment.cells[i], family, counters));
  }
  return fragment;
}

}  // namespace bloomstream
