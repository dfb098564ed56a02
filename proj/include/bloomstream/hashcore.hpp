#pragma once

// Shared hash family for the count-min sketch and every bloom filter.
//
// Two seeded base hashes h1, h2 of a grid cell's canonical key are combined
// linearly into k derived functions g_i = (h1 + i*h2) mod p. Function i owns
// the disjoint range [(i-1)p, ip) of the m = k*p wide tables, so a cell's
// signature is k absolute indices, one per partition. Indices are zero-based.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bloomstream {

struct Geometry {
  std::size_t k = 0;    // hash functions, one partition each
  std::uint64_t p = 0;  // partition width (prime)

  constexpr std::uint64_t m() const { return static_cast<std::uint64_t>(k) * p; }
  friend constexpr bool operator==(const Geometry&, const Geometry&) = default;
};

// Canonical byte string of a coordinate tuple: little-endian u64 dimension
// count followed by each coordinate as little-endian two's complement i64.
struct CoordKey {
  std::vector<std::byte> bytes;
  friend bool operator==(const CoordKey&, const CoordKey&) = default;
};

// Instrumentation: number of base hash and derived hash evaluations.
struct HashCounters {
  std::uint64_t base = 0;
  std::uint64_t derived = 0;
  friend bool operator==(const HashCounters&, const HashCounters&) = default;
};

class HashFamily {
 public:
  static constexpr std::uint64_t kDefaultSeed1 = 0x8f3a61c5d24b9e07ULL;
  static constexpr std::uint64_t kDefaultSeed2 = 0x2c1b7e94f05da368ULL;

  // Throws ConfigError unless k >= 1, p is prime and the seeds differ.
  explicit HashFamily(Geometry geometry, std::uint64_t seed1 = kDefaultSeed1,
                      std::uint64_t seed2 = kDefaultSeed2);

  const Geometry& geometry() const { return geometry_; }
  std::size_t k() const { return geometry_.k; }
  std::uint64_t p() const { return geometry_.p; }
  std::uint64_t m() const { return geometry_.m(); }
  std::uint64_t seed1() const { return seed1_; }
  std::uint64_t seed2() const { return seed2_; }

 private:
  Geometry geometry_;
  std::uint64_t seed1_;
  std::uint64_t seed2_;
};

// The k absolute table indices of one grid cell; index i lies in
// [i*p, (i+1)*p) for zero-based i.
class CellSignature {
 public:
  CellSignature() = default;
  explicit CellSignature(std::vector<std::uint64_t> indices) : indices_(std::move(indices)) {}

  std::span<const std::uint64_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::uint64_t operator[](std::size_t i) const { return indices_[i]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const CellSignature&, const CellSignature&) = default;
  friend auto operator<=>(const CellSignature&, const CellSignature&) = default;

 private:
  std::vector<std::uint64_t> indices_;
};

struct BaseHashes {
  std::uint64_t h1 = 0;
  std::uint64_t h2 = 0;
};

bool is_prime(std::uint64_t n);

// Smallest prime >= lower. Requires lower >= 2.
std::uint64_t next_prime(std::uint64_t lower);

// Seeded 64-bit non-cryptographic hash over a byte string.
std::uint64_t hash64(std::span<const std::byte> data, std::uint64_t seed) noexcept;

// Throws DomainError for an empty tuple.
CoordKey encode_coords(std::span<const std::int64_t> coords);

BaseHashes base_hashes(const CoordKey& key, const HashFamily& family,
                       HashCounters* counters = nullptr);

// g_i = (h1 + i*h2) mod p for function index i in [1, k].
constexpr std::uint64_t derived_hash(std::size_t i, std::uint64_t h1, std::uint64_t h2,
                                     std::uint64_t p) {
  return (h1 % p + (static_cast<std::uint64_t>(i) % p) * (h2 % p) % p) % p;
}

CellSignature cell_signature(std::span<const std::int64_t> coords, const HashFamily& family,
                             HashCounters* counters = nullptr);

}  // namespace bloomstream
