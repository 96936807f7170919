#include "srd/scalar_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace srd {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binary_entropy: p must lie in [0,1]");
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

double delta(double r) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::invalid_argument("delta: r must lie in (0,1]");
  }
  if (r == 1.0) return 1.0;
  // exp form avoids pow() blowups as r -> 0 where the exponent diverges
  return std::exp((1.0 - 1.0 / r) * std::log1p(-r));
}

double entropy_power(const DistributionSpec& f) {
  if (!f.has_density()) return 0.0;
  if (f.kind() == DistKind::gaussian) return f.variance();
  return std::exp(2.0 * f.differential_entropy()) /
         (2.0 * std::numbers::pi * std::numbers::e);
}

double normalized_entropy_power(double omega, const DistributionSpec& f) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument("normalized_entropy_power: omega must lie in (0,1)");
  }
  if (!f.has_density()) return 0.0;
  const double mu = f.mean();
  const double power = f.variance() + (1.0 - omega) * mu * mu;
  return entropy_power(f) / power;
}

}  // namespace srd
