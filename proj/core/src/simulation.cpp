#include "srd/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>

#include "srd/random_matrix.hpp"

namespace srd {

Basis Basis::identity(int n) {
  if (n < 1) throw std::invalid_argument("Basis: n must be positive");
  return Basis(n, true);
}

Basis Basis::haar(int n, Rng& rng) {
  Basis b(n, false);
  b.q_ = haar_orthogonal(n, rng);
  return b;
}

const Eigen::MatrixXd& Basis::matrix() const {
  if (identity_) {
    throw std::logic_error("Basis: identity basis has no stored matrix");
  }
  return q_;
}

Eigen::VectorXd Basis::apply(const Eigen::VectorXd& v) const {
  return identity_ ? v : Eigen::VectorXd(q_ * v);
}

Eigen::VectorXd Basis::apply_transpose(const Eigen::VectorXd& v) const {
  return identity_ ? v : Eigen::VectorXd(q_.transpose() * v);
}

int hamming_distortion(const std::vector<int>& s, const std::vector<int>& s_hat) {
  // |union| - |intersection| over sorted index sets
  std::size_t i = 0, j = 0;
  int diff = 0;
  while (i < s.size() && j < s_hat.size()) {
    if (s[i] == s_hat[j]) {
      ++i;
      ++j;
    } else if (s[i] < s_hat[j]) {
      ++diff;
      ++i;
    } else {
      ++diff;
      ++j;
    }
  }
  diff += static_cast<int>((s.size() - i) + (s_hat.size() - j));
  return diff;
}

SourceInstance gen_instance(const SparsityConfig& config,
                            const DistributionSpec& f, BasisKind basis_kind,
                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> support = uniform_support(config.n, config.k, rng);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(config.n);
  for (int idx : support) u(idx) = f.sample(rng);
  Basis basis = basis_kind == BasisKind::identity ? Basis::identity(config.n)
                                                  : Basis::haar(config.n, rng);
  Eigen::VectorXd x = basis.apply(u);
  return {config.n, std::move(support), std::move(u), std::move(basis),
          std::move(x)};
}

Eigen::MatrixXd gen_sampling_matrix(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("gen_sampling_matrix: m, n must be positive");
  }
  Rng rng(seed);
  return gaussian_matrix(m, n, 1.0 / n, rng);
}

std::vector<int> thresholding_estimate(const SampleSet& sample_set,
                                       const Basis& basis,
                                       const ThresholdSet& t_star) {
  const auto m = sample_set.a.rows();
  const auto n = sample_set.a.cols();
  const double rho = static_cast<double>(m) / static_cast<double>(n);
  Eigen::VectorXd u_hat =
      basis.apply_transpose(sample_set.a.transpose() * sample_set.y);
  if (rho > 0.0) u_hat /= std::sqrt(rho);
  std::vector<int> estimate;
  for (Eigen::Index i = 0; i < u_hat.size(); ++i) {
    if (t_star.contains(u_hat(i))) estimate.push_back(static_cast<int>(i));
  }
  return estimate;
}

ExperimentAggregate run_experiment(const SparsityConfig& config,
                                   const DistributionSpec& f, double rho,
                                   double alpha, int trials,
                                   std::uint64_t seed, BasisKind basis_kind,
                                   int threads) {
  if (trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("run_experiment: rho must lie in (0,1]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("run_experiment: alpha must lie in [0,1]");
  }
  const int m = static_cast<int>(std::ceil(rho * config.n));
  const double rho_eff = static_cast<double>(m) / static_cast<double>(config.n);
  const ThresholdSet t_star =
      optimal_threshold_set(MixtureModel(rho_eff, config.omega, f));
  const double exceed_level = alpha * static_cast<double>(config.k);

  auto run_trial = [&](int i) -> TrialResult {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(i);
    SourceInstance instance = gen_instance(config, f, basis_kind, trial_seed);
    // sampling matrix from the same trial stream, after the instance draws
    Rng rng(trial_seed ^ 0x9e3779b97f4a7c15ull);
    SampleSet samples;
    samples.a = gaussian_matrix(m, config.n, 1.0 / config.n, rng);
    samples.y = samples.a * instance.x;
    const std::vector<int> estimate =
        thresholding_estimate(samples, instance.basis, t_star);
    const int d = hamming_distortion(instance.support, estimate);
    return {d, static_cast<double>(d) / static_cast<double>(config.n),
            static_cast<double>(d) > exceed_level, trial_seed};
  };

  std::vector<TrialResult> results(trials);
  if (threads <= 1) {
    for (int i = 0; i < trials; ++i) results[i] = run_trial(i);
  } else {
    std::vector<std::future<void>> tasks;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
      tasks.push_back(std::async(std::launch::async, [&] {
        for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
          results[i] = run_trial(i);
        }
      }));
    }
    for (auto& task : tasks) task.get();
  }

  ExperimentAggregate agg;
  agg.trials = std::move(results);
  agg.n = config.n;
  agg.m = m;
  agg.k = config.k;
  agg.rho_effective = rho_eff;
  double sum = 0.0;
  int exceeded = 0;
  for (const auto& r : agg.trials) {
    sum += r.normalized_distortion;
    exceeded += r.exceeded ? 1 : 0;
  }
  const double mean = sum / trials;
  double sq = 0.0;
  for (const auto& r : agg.trials) {
    const double d = r.normalized_distortion - mean;
    sq += d * d;
  }
  agg.mean_normalized_distortion = mean;
  agg.stddev_normalized_distortion =
      trials > 1 ? std::sqrt(sq / (trials - 1)) : 0.0;
  agg.empirical_pe = static_cast<double>(exceeded) / trials;
  return agg;
}

DiscreteRecovery discrete_one_sample_recover(double y,
                                             const Eigen::RowVectorXd& a,
                                             const Basis& basis, int k,
                                             const std::vector<double>& alphabet,
                                             double tolerance) {
  const int n = static_cast<int>(a.cols());
  if (basis.size() != n) {
    throw std::invalid_argument("discrete_one_sample_recover: basis size mismatch");
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument("discrete_one_sample_recover: need 1 <= k <= n");
  }
  if (alphabet.empty()) {
    throw std::invalid_argument("discrete_one_sample_recover: empty alphabet");
  }
  for (double v : alphabet) {
    if (v == 0.0) {
      throw std::invalid_argument(
          "discrete_one_sample_recover: alphabet must exclude zero");
    }
  }

  // enumeration guard: C(n,k) * |alphabet|^k <= 1e7
  double candidates = 1.0;
  for (int i = 0; i < k; ++i) {
    candidates *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  candidates *= std::pow(static_cast<double>(alphabet.size()), k);
  if (candidates > 1e7) {
    throw std::invalid_argument(
        "discrete_one_sample_recover: search space exceeds 1e7 candidates; "
        "reduce n, k, or the alphabet");
  }

  if (tolerance <= 0.0) tolerance = 1e-9 * std::abs(y);

  // w_i = (a B)_i, so a B u = sum over the support of w_i u_i
  Eigen::RowVectorXd w =
      basis.is_identity() ? a : Eigen::RowVectorXd(a * basis.matrix());

  std::vector<int> support(k);
  for (int i = 0; i < k; ++i) support[i] = i;  // first combination

  DiscreteRecovery out;
  out.status = RecoveryStatus::no_match;
  out.match_count = 0;
  out.candidates_scanned = 0;

  const int asize = static_cast<int>(alphabet.size());
  std::vector<int> digits(k);
  for (;;) {
    // odometer over alphabet assignments for this support
    std::fill(digits.begin(), digits.end(), 0);
    for (;;) {
      double value = 0.0;
      for (int i = 0; i < k; ++i) value += w(support[i]) * alphabet[digits[i]];
      ++out.candidates_scanned;
      if (std::abs(value - y) < tolerance) {
        ++out.match_count;
        if (out.match_count == 1) {
          Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
          for (int i = 0; i < k; ++i) u(support[i]) = alphabet[digits[i]];
          out.u = std::move(u);
        }
      }
      int pos = k - 1;
      while (pos >= 0 && digits[pos] == asize - 1) {
        digits[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[pos];
    }

    // next k-combination in lexicographic order
    int pos = k - 1;
    while (pos >= 0 && support[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++support[pos];
    for (int i = pos + 1; i < k; ++i) support[i] = support[i - 1] + 1;
  }

  if (out.match_count == 1) {
    out.status = RecoveryStatus::unique;
  } else if (out.match_count > 1) {
    out.status = RecoveryStatus::multiple_match;
    out.u.resize(0);
  }
  return out;
}

}  // namespace srd
