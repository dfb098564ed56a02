#pragma once

#include <cstdint>
#include <vector>

#include "bloomstream/hashcore.hpp"

namespace bloomstream {

using Timestamp = double;

// Damped-window weight 2^{-lambda * elapsed}.
double decay_weight(double lambda, Timestamp elapsed);

// Count-min sketch over cell signatures whose counters decay exponentially
// with age. Each counter carries the timestamp of its last update; decay is
// applied lazily when the counter is next touched:
//
//   count[i] <- 2^{-lambda (t - tcount[i])} * count[i] + 1,  tcount[i] <- t
//
// Counters are addressed by absolute signature index, so row i of the k x p
// table is the slice [i*p, (i+1)*p).
//
// Single writer; concurrent query() calls are safe only without a writer.
class DecayedCountMin {
 public:
  // Throws ConfigError unless lambda is in (0, 1).
  DecayedCountMin(Geometry geometry, double lambda);

  // Decays and increments the k counters named by sig, stamps them with t,
  // and returns the cell density (minimum of the updated counters). Throws
  // MonotonicityError if t precedes a touched counter's timestamp; the
  // sketch is unchanged in that case.
  double update(const CellSignature& sig, Timestamp t);

  // Minimum over the k counters, each decayed to time t. Does not mutate.
  // Throws MonotonicityError if t precedes a touched counter's timestamp.
  double query(const CellSignature& sig, Timestamp t) const;

  const Geometry& geometry() const { return geometry_; }
  double lambda() const { return lambda_; }
  Timestamp clock() const { return clock_; }

  double count_at(std::uint64_t index) const { return count_[index]; }
  Timestamp timestamp_at(std::uint64_t index) const { return tcount_[index]; }

  // Fraction of counters that have ever been updated.
  double fill_ratio() const;

 private:
  void check_signature(const CellSignature& sig) const;

  Geometry geometry_;
  double lambda_;
  std::vector<double> count_;
  std::vector<Timestamp> tcount_;
  Timestamp clock_ = 0.0;
  std::uint64_t touched_ = 0;
};

// Strictly above the threshold.
constexpr bool is_dense(double density, double density_threshold) {
  return density > density_threshold;
}

}  // namespace bloomstream
