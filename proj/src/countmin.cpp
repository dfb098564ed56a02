#include "bloomstream/countmin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bloomstream/errors.hpp"

namespace bloomstream {

double decay_weight(double lambda, Timestamp elapsed) { return std::exp2(-lambda * elapsed); }

DecayedCountMin::DecayedCountMin(Geometry geometry, double lambda)
    : geometry_(geometry),
      lambda_(lambda),
      count_(geometry.m(), 0.0),
      tcount_(geometry.m(), 0.0) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("decay rate must lie in (0, 1)");
  if (geometry.k < 1 || geometry.p < 1) throw ConfigError("invalid count-min geometry");
}

void DecayedCountMin::check_signature(const CellSignature& sig) const {
  if (sig.size() != geometry_.k) throw ConfigError("signature length does not match sketch depth");
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const std::uint64_t lo = static_cast<std::uint64_t>(i) * geometry_.p;
    if (sig[i] < lo || sig[i] >= lo + geometry_.p) {
      throw ConfigError("signature index outside its partition");
    }
  }
}

double DecayedCountMin::update(const CellSignature& sig, Timestamp t) {
  check_signature(sig);
  for (std::uint64_t idx : sig) {
    if (t < tcount_[idx]) throw MonotonicityError("count-min update with a regressing timestamp");
  }
  double density = std::numeric_limits<double>::infinity();
  for (std::uint64_t idx : sig) {
    if (count_[idx] == 0.0 && tcount_[idx] == 0.0) ++touched_;
    count_[idx] = decay_weight(lambda_, t - tcount_[idx]) * count_[idx] + 1.0;
    tcount_[idx] = t;
    density = std::min(density, count_[idx]);
  }
  clock_ = std::max(clock_, t);
  return density;
}

double DecayedCountMin::query(const CellSignature& sig, Timestamp t) const {
  check_signature(sig);
  double density = std::numeric_limits<double>::infinity();
  for (std::uint64_t idx : sig) {
    if (t < tcount_[idx]) throw MonotonicityError("count-min query before a counter's timestamp");
    density = std::min(density, decay_weight(lambda_, t - tcount_[idx]) * count_[idx]);
  }
  return density;
}

double DecayedCountMin::fill_ratio() const {
  return static_cast<double>(touched_) / static_cast<double>(count_.size());
}

}  // namespace bloomstream
