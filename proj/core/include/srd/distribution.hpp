#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "srd/rng.hpp"

namespace srd {

enum class DistKind { gaussian, discrete_finite, custom };

/// Descriptor of the law of the nonzero signal coefficients: first two
/// moments, differential entropy, pointwise density, and a seeded sampler.
/// Only the pieces the rate formulas and simulations need are modeled.
///
/// Invariants enforced at construction:
///  - no probability mass at zero (discrete support values must be nonzero),
///  - finite second moment,
///  - discrete weights sum to one within 1e-12.
class DistributionSpec {
 public:
  static DistributionSpec gaussian(double mean, double variance);

  /// Finite-alphabet law. Values must be nonzero; weights nonnegative and
  /// summing to one. With no weights given, the alphabet is equiprobable.
  static DistributionSpec discrete(std::vector<double> values,
                                   std::vector<double> weights = {});

  /// Arbitrary density-backed law. The differential entropy is supplied by
  /// the caller (in nats) and is not estimated numerically. The density and
  /// sampler must describe the same law with zero mass at zero; this is a
  /// documented precondition, not a runtime check. Finite support bounds,
  /// when known, let the convolution quadratures place interval endpoints
  /// on the density's jump points.
  static DistributionSpec custom(double mean, double variance,
                                 double differential_entropy,
                                 std::function<double(double)> density,
                                 std::function<double(Rng&)> sampler,
                                 double support_lo = -std::numeric_limits<double>::infinity(),
                                 double support_hi = std::numeric_limits<double>::infinity());

  DistKind kind() const { return kind_; }
  bool has_density() const { return kind_ != DistKind::discrete_finite; }

  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double second_moment() const { return mean_ * mean_ + variance_; }

  /// Differential entropy in nats. For the Gaussian kind this is computed
  /// as 0.5*ln(2*pi*e*variance); discrete laws have none and throw.
  double differential_entropy() const;

  /// Pointwise density; throws for discrete laws.
  double density(double x) const;

  double sample(Rng& rng) const;
  std::vector<double> sample(Rng& rng, std::size_t count) const;

  const std::vector<double>& values() const;   // discrete only
  const std::vector<double>& weights() const;  // discrete only

  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }

 private:
  DistributionSpec() = default;

  DistKind kind_ = DistKind::gaussian;
  double mean_ = 0.0;
  double variance_ = 1.0;
  double custom_entropy_ = 0.0;
  double support_lo_ = -std::numeric_limits<double>::infinity();
  double support_hi_ = std::numeric_limits<double>::infinity();
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::function<double(double)> density_;
  std::function<double(Rng&)> sampler_;
};

/// Sparsity regime (omega, n) with k = floor(omega * n).
struct SparsityConfig {
  double omega;
  int n;
  int k;

  SparsityConfig(double omega_rate, int length);
};

}  // namespace srd
