#include "bloomstream/hashcore.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "bloomstream/errors.hpp"

namespace bloomstream {

namespace {

constexpr std::uint64_t kMul1 = 0x87c37b91114253d5ULL;
constexpr std::uint64_t kMul2 = 0x4cf5ad432745937fULL;

constexpr std::uint64_t fmix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

__extension__ using Wide = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % mod);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

void put_u64(std::vector<std::byte>& out, std::uint64_t v) {
  for (int shift = 0; shift < 64; shift += 8) {
    out.push_back(static_cast<std::byte>((v >> shift) & 0xffU));
  }
}

}  // namespace

HashFamily::HashFamily(Geometry geometry, std::uint64_t seed1, std::uint64_t seed2)
    : geometry_(geometry), seed1_(seed1), seed2_(seed2) {
  if (geometry_.k < 1) throw ConfigError("hash family needs k >= 1");
  if (!is_prime(geometry_.p)) {
    throw ConfigError("hash family partition size must be prime, got " +
                      std::to_string(geometry_.p));
  }
  if (seed1_ == seed2_) throw ConfigError("hash family seeds must differ");
}

// Deterministic Miller-Rabin; this witness set is exact for all 64-bit n.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                              31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t lower) {
  if (lower < 2) throw ConfigError("next_prime requires lower >= 2");
  std::uint64_t candidate = lower;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

std::uint64_t hash64(std::span<const std::byte> data, std::uint64_t seed) noexcept {
  std::uint64_t h = seed ^ (static_cast<std::uint64_t>(data.size()) * kMul1);
  std::size_t i = 0;
  for (; i + 8 <= data.size(); i += 8) {
    std::uint64_t w = 0;
    std::memcpy(&w, data.data() + i, sizeof w);
    w *= kMul1;
    w = std::rotl(w, 31);
    w *= kMul2;
    h ^= w;
    h = std::rotl(h, 27) * 5 + 0x52dce729;
  }
  if (i < data.size()) {
    std::uint64_t tail = 0;
    for (unsigned shift = 0; i < data.size(); ++i, shift += 8) {
      tail |= static_cast<std::uint64_t>(data[i]) << shift;
    }
    tail *= kMul2;
    tail = std::rotl(tail, 33);
    h ^= tail * kMul1;
  }
  return fmix64(h ^ seed);
}

CoordKey encode_coords(std::span<const std::int64_t> coords) {
  if (coords.empty()) throw DomainError("cannot encode a zero-dimensional coordinate tuple");
  CoordKey key;
  key.bytes.reserve(8 * (coords.size() + 1));
  put_u64(key.bytes, coords.size());
  for (std::int64_t c : coords) put_u64(key.bytes, static_cast<std::uint64_t>(c));
  return key;
}

BaseHashes base_hashes(const CoordKey& key, const HashFamily& family, HashCounters* counters) {
  const std::uint64_t p = family.p();
  BaseHashes out{hash64(key.bytes, family.seed1()) % p, hash64(key.bytes, family.seed2()) % p};
  if (counters != nullptr) counters->base += 2;
  return out;
}

CellSignature cell_signature(std::span<const std::int64_t> coords, const HashFamily& family,
                             HashCounters* counters) {
  const BaseHashes base = base_hashes(encode_coords(coords), family, counters);
  const std::uint64_t p = family.p();
  std::vector<std::uint64_t> indices(family.k());
  for (std::size_t i = 0; i < family.k(); ++i) {
    indices[i] = static_cast<std::uint64_t>(i) * p + derived_hash(i + 1, base.h1, base.h2, p);
  }
  if (counters != nullptr) counters->derived += family.k();
  return CellSignature(std::move(indices));
}

}  // namespace bloomstream
