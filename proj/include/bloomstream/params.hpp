#pragma once

// Sketch geometry derived from optimal bloom filter parameters, and the
// count-min guarantees that geometry implies when the same table serves as
// a count-min sketch.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bloomstream/hashcore.hpp"

namespace bloomstream {

// k = round(log2(1/fp)) (at least 1), p = next_prime(ceil(m_opt / k)) with
// m_opt = -n ln(fp) / (ln 2)^2, m = k*p. Throws ConfigError for n < 1 or fp
// outside (0, 1).
Geometry derive_geometry(std::uint64_t n, double fp);

// Partitioned-filter estimate (1 - (1 - k/m)^n)^k.
double predicted_fp(std::uint64_t m, std::size_t k, std::uint64_t n);

// Asymptotic form (1 - e^{-kn/m})^k.
double predicted_fp_asymptotic(std::uint64_t m, std::size_t k, std::uint64_t n);

struct CountMinGuarantees {
  double epsilon = 0.0;        // e ln2 / n
  double delta_from_fp = 0.0;  // fp^(1/ln2)
  double delta = 0.0;          // max(delta_from_fp, epsilon)
};

CountMinGuarantees derive_cm_guarantees(std::uint64_t n, double fp);

// 2 * ceil(ln(1/delta) / ln(1/epsilon)). Informational; the hash family
// always uses exactly two base hashes.
std::uint64_t base_hash_count(double epsilon, double delta);

// Dense cells a cluster can absorb while dynamic, floor(1/(2 lambda D_th)),
// times the 2d+1 cells of each fragment. Throws ConfigError when the dense
// cell count is zero.
std::uint64_t fragment_capacity(double lambda, double density_threshold, std::size_t dims);

struct SketchParams {
  std::uint64_t n = 0;  // bloom capacity in elements
  double fp = 0.0;      // target false-positive probability
  Geometry geometry;
  CountMinGuarantees cm;
  double lambda = 0.0;             // decay rate in (0, 1)
  double density_threshold = 0.0;  // D_th, in decayed-weight units
  std::size_t dims = 0;
  double resolution = 0.0;     // grid cell side length
  std::vector<double> origin;  // grid anchor, length dims

  // Derives geometry and guarantees from (n, fp). An empty origin means the
  // all-zero tuple. Throws ConfigError on any invalid field.
  static SketchParams make(std::uint64_t n, double fp, double lambda, double density_threshold,
                           std::size_t dims, double resolution, std::vector<double> origin = {});

  void validate() const;

  // T_th = 1/lambda, the decay half-life expressed in clock units.
  double time_threshold() const { return 1.0 / lambda; }
};

}  // namespace bloomstream
