#include "bloomstream/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bloomstream/errors.hpp"

namespace bloomstream {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_probability(double fp) {
  if (!(fp > 0.0 && fp < 1.0)) {
    throw ConfigError("false-positive probability must lie in (0, 1), got " + std::to_string(fp));
  }
}

}  // namespace

Geometry derive_geometry(std::uint64_t n, double fp) {
  if (n < 1) throw ConfigError("bloom capacity must be at least 1");
  require_probability(fp);

  const double m_opt = -static_cast<double>(n) * std::log(fp) / (kLn2 * kLn2);
  const auto k = static_cast<std::size_t>(std::max(1.0, std::round(std::log2(1.0 / fp))));
  const auto width = static_cast<std::uint64_t>(std::ceil(m_opt / static_cast<double>(k)));
  return Geometry{k, next_prime(std::max<std::uint64_t>(width, 2))};
}

double predicted_fp(std::uint64_t m, std::size_t k, std::uint64_t n) {
  if (n == 0) return 0.0;
  const double kd = static_cast<double>(k);
  const double zero_bit = std::pow(1.0 - kd / static_cast<double>(m), static_cast<double>(n));
  return std::pow(1.0 - zero_bit, kd);
}

double predicted_fp_asymptotic(std::uint64_t m, std::size_t k, std::uint64_t n) {
  const double kd = static_cast<double>(k);
  return std::pow(1.0 - std::exp(-kd * static_cast<double>(n) / static_cast<double>(m)), kd);
}

CountMinGuarantees derive_cm_guarantees(std::uint64_t n, double fp) {
  if (n < 1) throw ConfigError("bloom capacity must be at least 1");
  require_probability(fp);
  CountMinGuarantees g;
  g.epsilon = std::numbers::e * kLn2 / static_cast<double>(n);
  g.delta_from_fp = std::pow(fp, 1.0 / kLn2);
  g.delta = std::max(g.delta_from_fp, g.epsilon);
  return g;
}

std::uint64_t base_hash_count(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0)) {
    throw ConfigError("base_hash_count requires epsilon and delta in (0, 1)");
  }
  // Same representation slack as fragment_capacity: exact ratios such as
  // ln(1e4)/ln(1e2) must not round up to the next integer.
  const double ratio = std::log(1.0 / delta) / std::log(1.0 / epsilon);
  return 2 * static_cast<std::uint64_t>(std::ceil(ratio * (1.0 - 1e-12)));
}

std::uint64_t fragment_capacity(double lambda, double density_threshold, std::size_t dims) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("decay rate must lie in (0, 1)");
  if (!(density_threshold > 0.0)) throw ConfigError("density threshold must be positive");
  if (dims < 1) throw ConfigError("dimensionality must be at least 1");
  // Absorb representation error so exact quotients such as 1/(2*0.1*5) floor to 1.
  const double ratio = 1.0 / (2.0 * lambda * density_threshold);
  const auto dense_cells = static_cast<std::uint64_t>(std::floor(ratio * (1.0 + 1e-12)));
  if (dense_cells == 0) {
    throw ConfigError("decay rate too aggressive for the density threshold: no cell can stay dense");
  }
  return dense_cells * (2 * static_cast<std::uint64_t>(dims) + 1);
}

SketchParams SketchParams::make(std::uint64_t n, double fp, double lambda,
                                double density_threshold, std::size_t dims, double resolution,
                                std::vector<double> origin) {
  SketchParams params;
  params.n = n;
  params.fp = fp;
  params.geometry = derive_geometry(n, fp);
  params.cm = derive_cm_guarantees(n, fp);
  params.lambda = lambda;
  params.density_threshold = density_threshold;
  params.dims = dims;
  params.resolution = resolution;
  params.origin = origin.empty() ? std::vector<double>(dims, 0.0) : std::move(origin);
  params.validate();
  return params;
}

void SketchParams::validate() const {
  if (n < 1) throw ConfigError("bloom capacity must be at least 1");
  require_probability(fp);
  if (geometry.k < 1 || !is_prime(geometry.p)) throw ConfigError("invalid sketch geometry");
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("decay rate must lie in (0, 1)");
  if (!(density_threshold > 0.0)) throw ConfigError("density threshold must be positive");
  if (dims < 1) throw ConfigError("dimensionality must be at least 1");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw ConfigError("grid resolution must be positive and finite");
  }
  if (origin.size() != dims) throw ConfigError("grid origin length must equal dimensionality");
  if (!(cm.epsilon <= cm.delta)) throw ConfigError("count-min guarantees violate epsilon <= delta");
}

}  // namespace bloomstream
