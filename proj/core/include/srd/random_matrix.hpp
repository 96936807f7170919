#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "srd/rng.hpp"

namespace srd {

/// i.i.d. Gaussian matrix with the given per-entry variance.
Eigen::MatrixXd gaussian_matrix(int rows, int cols, double entry_variance,
                                Rng& rng);

/// Haar-distributed orthogonal matrix: QR of a square Gaussian matrix with
/// the sign of each R diagonal entry folded into the corresponding Q column
/// (the standard correction that makes the factor Haar-uniform).
Eigen::MatrixXd haar_orthogonal(int n, Rng& rng);

/// Uniformly random size-k subset of {0, ..., n-1}, sorted.
std::vector<int> uniform_support(int n, int k, Rng& rng);

struct ProjectedSpectrum {
  std::vector<double> eigenvalues;  // ascending
  int n;
  int m;  // ceil(rho * n)
  int k;  // floor(omega * n)
  bool m_side_rank_deficient;  // true when m > k (extra zero eigenvalues)
};

/// Eigenvalues of A B_S B_S^T A^T for A with i.i.d. N(0,1/n) entries, a
/// uniform size-k support S, and a Haar orthogonal basis B. Sizes above
/// n = 4000 are rejected to keep eigensolver runtimes desk-scale.
ProjectedSpectrum empirical_projected_spectrum(int n, double rho, double omega,
                                               std::uint64_t seed);

/// Eigenvalues (ascending) of A A^T for A with i.i.d. N(0,1/n) entries.
std::vector<double> empirical_gram_spectrum(int n, double rho,
                                            std::uint64_t seed);

/// One-sample Kolmogorov-Smirnov statistic of an ascending sample against a
/// reference distribution function.
double ks_statistic(const std::vector<double>& ascending_sample,
                    const std::function<double(double)>& cdf);

}  // namespace srd
