#pragma once

#include "srd/distribution.hpp"

namespace srd {

/// Binary entropy in nats; H(0) = H(1) = 0 by continuity.
double binary_entropy(double p);

/// (1-r)^(1-1/r) on (0,1], with the continuous value 1 at r = 1.
/// Decreasing from e (as r -> 0) down to 1.
double delta(double r);

/// Entropy power (2*pi*e)^{-1} exp(2 h(F)). Equals the variance for a
/// Gaussian law. Returns 0 for a discrete law (which has no density;
/// query f.has_density() to distinguish that case from a genuine zero).
double entropy_power(const DistributionSpec& f);

/// Entropy power of F normalized by the per-coordinate signal power
/// sigma^2 + (1-omega)*mu^2. Always in [0,1]; equals 1 exactly when F is a
/// zero-mean Gaussian, and 0 when F is discrete.
double normalized_entropy_power(double omega, const DistributionSpec& f);

}  // namespace srd
