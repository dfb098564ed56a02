#pragma once

// Partitioned bloom filters over cell signatures. A single-cell filter is
// just its CellSignature (k set bits, one per partition); BloomSignature is
// the dense m-bit form used for cluster signatures and their unions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bloomstream/bitwords.hpp"
#include "bloomstream/grid.hpp"
#include "bloomstream/hashcore.hpp"

namespace bloomstream {

class BloomSignature {
 public:
  BloomSignature() = default;
  explicit BloomSignature(Geometry geometry);

  const Geometry& geometry() const { return geometry_; }
  std::uint64_t size_bits() const { return geometry_.m(); }

  bool test(std::uint64_t bit) const { return bitwords::test(words_, bit); }
  void set(std::uint64_t bit);
  // Sets the k bits of a single-cell filter.
  void insert(const CellSignature& sig);

  std::size_t popcount() const { return bitwords::popcount(words_); }
  bool empty() const { return !bitwords::any(words_); }
  std::span<const bitwords::Word> words() const { return words_; }

  template <typename Fn>
  void for_each_set_bit(Fn&& fn) const {
    bitwords::for_each_set_bit(words_, std::forward<Fn>(fn));
  }

  // Bitwise OR. Throws ConfigError on geometry mismatch.
  BloomSignature& operator|=(const BloomSignature& other);

  friend bool operator==(const BloomSignature&, const BloomSignature&) = default;

 private:
  Geometry geometry_;
  std::vector<bitwords::Word> words_;
};

BloomSignature filter_from_signature(const CellSignature& sig, Geometry geometry);

// True iff every signature index is set in cluster (no false negatives).
// Throws ConfigError on geometry mismatch.
bool contains(const CellSignature& sig, const BloomSignature& cluster);
// True iff every set bit of query is set in cluster.
bool contains(const BloomSignature& query, const BloomSignature& cluster);

BloomSignature unite(const BloomSignature& a, const BloomSignature& b);

// The 2d+1 single-cell filters covering a cell and its orthogonal
// neighbors, the cell itself first.
struct ClusterFragment {
  std::vector<CellCoords> cells;
  std::vector<CellSignature> filters;

  std::size_t size() const { return filters.size(); }
  // Union of all fragment filters.
  BloomSignature to_signature(Geometry geometry) const;
};

ClusterFragment make_fragment(const CellCoords& cell, const HashFamily& family,
                              HashCounters* counters = nullptr);

// Same, reusing an already computed signature for the center cell.
ClusterFragment make_fragment(const CellCoords& cell, CellSignature center,
                              const HashFamily& family, HashCounters* counters = nullptr);

}  // namespace bloomstream
