#include "srd/random_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace srd {

namespace {
constexpr int kMaxEigenSize = 4000;
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, double entry_variance,
                                Rng& rng) {
  if (rows < 1 || cols < 1 || !(entry_variance > 0.0)) {
    throw std::invalid_argument("gaussian_matrix: bad shape or variance");
  }
  const double sd = std::sqrt(entry_variance);
  Eigen::MatrixXd a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      a(i, j) = sd * rng.normal();
    }
  }
  return a;
}

Eigen::MatrixXd haar_orthogonal(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be positive");
  Eigen::MatrixXd g = gaussian_matrix(n, n, 1.0, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    if (packed(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

std::vector<int> uniform_support(int n, int k, Rng& rng) {
  if (k < 0 || k > n) throw std::invalid_argument("uniform_support: need 0 <= k <= n");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> support(pool.begin(), pool.begin() + k);
  std::sort(support.begin(), support.end());
  return support;
}

ProjectedSpectrum empirical_projected_spectrum(int n, double rho, double omega,
                                               std::uint64_t seed) {
  if (n < 100) {
    throw std::invalid_argument("empirical_projected_spectrum: n must be >= 100");
  }
  if (n > kMaxEigenSize) {
    throw std::invalid_argument(
        "empirical_projected_spectrum: n capped at 4000; request a smaller "
        "matrix");
  }
  if (!(rho > 0.0 && rho <= 1.0) || !(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument(
        "empirical_projected_spectrum: need rho in (0,1], omega in (0,1)");
  }
  const int m = static_cast<int>(std::ceil(rho * n));
  const int k = static_cast<int>(std::floor(omega * n));

  Rng rng(seed);
  Eigen::MatrixXd a = gaussian_matrix(m, n, 1.0 / n, rng);
  Eigen::MatrixXd basis = haar_orthogonal(n, rng);
  std::vector<int> support = uniform_support(n, k, rng);

  Eigen::MatrixXd bs(n, k);
  for (int j = 0; j < k; ++j) bs.col(j) = basis.col(support[j]);

  const Eigen::MatrixXd c = a * bs;              // m x k
  const Eigen::MatrixXd gram = c * c.transpose();  // m x m
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("empirical_projected_spectrum: eigensolver failed");
  }

  ProjectedSpectrum out;
  out.n = n;
  out.m = m;
  out.k = k;
  out.m_side_rank_deficient = m > k;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + m);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

std::vector<double> empirical_gram_spectrum(int n, double rho,
                                            std::uint64_t seed) {
  if (n < 1 || n > kMaxEigenSize) {
    throw std::invalid_argument("empirical_gram_spectrum: n out of range");
  }
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("empirical_gram_spectrum: rho must lie in (0,1]");
  }
  const int m = static_cast<int>(std::ceil(rho * n));
  Rng rng(seed);
  Eigen::MatrixXd a = gaussian_matrix(m, n, 1.0 / n, rng);
  const Eigen::MatrixXd gram = a * a.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("empirical_gram_spectrum: eigensolver failed");
  }
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + m);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

double ks_statistic(const std::vector<double>& ascending_sample,
                    const std::function<double(double)>& cdf) {
  if (ascending_sample.empty()) {
    throw std::invalid_argument("ks_statistic: empty sample");
  }
  const double n = static_cast<double>(ascending_sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < ascending_sample.size(); ++i) {
    const double f = cdf(ascending_sample[i]);
    const double upper = (static_cast<double>(i) + 1.0) / n - f;
    const double lower = f - static_cast<double>(i) / n;
    ks = std::max(ks, std::max(upper, lower));
  }
  return ks;
}

}  // namespace srd
