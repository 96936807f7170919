#pragma once

#include <cstdint>
#include <vector>

#include "srd/distribution.hpp"

namespace srd {

/// Scalar two-hypothesis channel: the observation is W under the null and
/// W + sqrt(rho)*U under the alternative, with W ~ N(0, omega*E[U^2]),
/// U ~ F, and prior P(alternative) = omega.
struct MixtureModel {
  double rho;
  double omega;
  DistributionSpec f;
  double null_variance;  // omega * E[U^2]

  MixtureModel(double rate, double prior, DistributionSpec dist);
};

/// One acceptance interval; lo/hi may be -inf/+inf.
struct Interval {
  double lo;
  double hi;
};

/// Finite union of disjoint open intervals: the acceptance region of the
/// scalar test. Intervals are kept sorted and non-adjacent.
class ThresholdSet {
 public:
  ThresholdSet() = default;  // empty set: nothing accepted
  explicit ThresholdSet(std::vector<Interval> intervals);

  static ThresholdSet whole_line();

  bool contains(double x) const;
  bool empty() const { return intervals_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }

  /// Finite endpoints only, in increasing order.
  std::vector<double> finite_boundaries() const;

  /// Copy with the b-th finite boundary shifted by `shift`. Intervals that
  /// collapse (lo >= hi) are dropped. Used for local-optimality probes.
  ThresholdSet with_shifted_boundary(std::size_t b, double shift) const;

 private:
  std::vector<Interval> intervals_;
};

double null_density(const MixtureModel& model, double x);

/// Density of W + sqrt(rho)*U. Closed-form Gaussian when F is Gaussian, a
/// finite Gaussian mixture when F is discrete, and a convolution quadrature
/// for custom laws (tolerance 1e-9; non-convergence throws NumericError
/// with the achieved tolerance in the message).
double alt_density(const MixtureModel& model, double x);

/// Bayes-optimal acceptance region
///   T* = { x : omega*f1(x) > (1-omega)*f0(x) }   (ties go to the null).
/// Boundaries are located by sign-change scanning of the weighted
/// log-likelihood ratio on a window of at least 8 combined standard
/// deviations (widened up to 3 times when a boundary is still outstanding),
/// then refined by bisection to 1e-10.
ThresholdSet optimal_threshold_set(const MixtureModel& model);

/// Error probability of a given acceptance region:
///   (1-omega) * P0(X in T) + omega * P1(X not in T).
double bayes_error(const MixtureModel& model, const ThresholdSet& set);

/// Minimal error probability epsilon(rho, omega, F), i.e. the error of T*.
double bayes_error(const MixtureModel& model);

struct MonteCarloEstimate {
  double value;
  double std_error;
  std::int64_t draws;
};

/// Plug-in Monte Carlo estimate of the error of `set` from seeded draws of
/// (Z, X). Used as an independent cross-check of the analytic error.
MonteCarloEstimate bayes_error_monte_carlo(const MixtureModel& model,
                                           const ThresholdSet& set,
                                           std::int64_t draws,
                                           std::uint64_t seed);

}  // namespace srd
