#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "srd/distribution.hpp"
#include "srd/hypothesis.hpp"
#include "srd/rng.hpp"

namespace srd {

enum class BasisKind { identity, haar };

/// Orthonormal synthesis basis; the identity case skips the dense products.
class Basis {
 public:
  static Basis identity(int n);
  static Basis haar(int n, Rng& rng);

  int size() const { return n_; }
  bool is_identity() const { return identity_; }
  const Eigen::MatrixXd& matrix() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;            // B v
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& v) const;  // B^T v

 private:
  Basis(int n, bool identity) : n_(n), identity_(identity) {}
  int n_;
  bool identity_;
  Eigen::MatrixXd q_;
};

/// One realization of the random source: sparse coefficients u with the
/// given support, basis B, and observable signal x = B u.
struct SourceInstance {
  int n;
  std::vector<int> support;  // sorted
  Eigen::VectorXd u;
  Basis basis;
  Eigen::VectorXd x;
};

struct SampleSet {
  Eigen::MatrixXd a;  // m x n
  Eigen::VectorXd y;  // a * x
};

struct TrialResult {
  int distortion_count;
  double normalized_distortion;  // distortion_count / n
  bool exceeded;                 // distortion_count > alpha * k
  std::uint64_t seed;
};

struct ExperimentAggregate {
  std::vector<TrialResult> trials;
  double mean_normalized_distortion;
  double stddev_normalized_distortion;
  double empirical_pe;  // fraction of trials with exceeded == true
  int n, m, k;
  double rho_effective;  // m / n, the rate the threshold set was built at
};

/// Cardinality of the symmetric difference of two index sets.
int hamming_distortion(const std::vector<int>& s, const std::vector<int>& s_hat);

SourceInstance gen_instance(const SparsityConfig& config,
                            const DistributionSpec& f, BasisKind basis_kind,
                            std::uint64_t seed);

/// m x n sampling matrix with i.i.d. N(0, 1/n) entries.
Eigen::MatrixXd gen_sampling_matrix(int m, int n, std::uint64_t seed);

/// Thresholding support estimate: back-projects y to
///   u_hat = B^T A^T y / sqrt(m/n)
/// and keeps the indices landing in the acceptance region. The 1/sqrt(rho)
/// factor puts u_hat on the scale of the scalar channel the region was
/// designed for, so the same T* applies unchanged.
std::vector<int> thresholding_estimate(const SampleSet& sample_set,
                                       const Basis& basis,
                                       const ThresholdSet& t_star);

/// Runs seeded thresholding trials (seed + i for trial i) and aggregates
/// distortion statistics. Bit-for-bit reproducible for a given (seed,
/// trials); `threads` only fans out the independent trials, the aggregate
/// is order-fixed.
ExperimentAggregate run_experiment(const SparsityConfig& config,
                                   const DistributionSpec& f, double rho,
                                   double alpha, int trials,
                                   std::uint64_t seed,
                                   BasisKind basis_kind = BasisKind::identity,
                                   int threads = 1);

enum class RecoveryStatus { unique, no_match, multiple_match };

struct DiscreteRecovery {
  RecoveryStatus status;
  Eigen::VectorXd u;  // the recovered vector when status == unique
  long match_count;
  long candidates_scanned;
};

/// Exhaustive one-sample decoder for finite-alphabet coefficients: scans
/// every size-k support (lexicographically) and every alphabet assignment
/// (odometer order) for |a * B * u - y| < tolerance. A nonpositive
/// tolerance selects the default 1e-9 * |y|. The candidate count
/// C(n,k) * |alphabet|^k is capped at 1e7.
DiscreteRecovery discrete_one_sample_recover(double y,
                                             const Eigen::RowVectorXd& a,
                                             const Basis& basis, int k,
                                             const std::vector<double>& alphabet,
                                             double tolerance = -1.0);

}  // namespace srd
