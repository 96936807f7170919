#include "srd/distribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace srd {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

DistributionSpec DistributionSpec::gaussian(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw std::invalid_argument("gaussian: variance must be positive and finite");
  }
  DistributionSpec d;
  d.kind_ = DistKind::gaussian;
  d.mean_ = mean;
  d.variance_ = variance;
  return d;
}

DistributionSpec DistributionSpec::discrete(std::vector<double> values,
                                            std::vector<double> weights) {
  if (values.empty()) {
    throw std::invalid_argument("discrete: empty support");
  }
  if (weights.empty()) {
    weights.assign(values.size(), 1.0 / static_cast<double>(values.size()));
  }
  if (weights.size() != values.size()) {
    throw std::invalid_argument("discrete: values/weights size mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0 || !std::isfinite(values[i])) {
      throw std::invalid_argument("discrete: support values must be nonzero and finite");
    }
    if (weights[i] < 0.0) {
      throw std::invalid_argument("discrete: negative weight");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("discrete: weights must sum to 1 within 1e-12");
  }

  DistributionSpec d;
  d.kind_ = DistKind::discrete_finite;
  double m1 = 0.0, m2 = 0.0;
  d.cumulative_.reserve(values.size());
  double run = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    m1 += weights[i] * values[i];
    m2 += weights[i] * values[i] * values[i];
    run += weights[i];
    d.cumulative_.push_back(run);
  }
  d.cumulative_.back() = 1.0;
  d.mean_ = m1;
  d.variance_ = m2 - m1 * m1;
  d.values_ = std::move(values);
  d.weights_ = std::move(weights);
  return d;
}

DistributionSpec DistributionSpec::custom(double mean, double variance,
                                          double differential_entropy,
                                          std::function<double(double)> density,
                                          std::function<double(Rng&)> sampler,
                                          double support_lo, double support_hi) {
  if (!(variance > 0.0) || !std::isfinite(mean) || !std::isfinite(variance)) {
    throw std::invalid_argument("custom: needs finite mean and positive variance");
  }
  if (!std::isfinite(differential_entropy)) {
    throw std::invalid_argument("custom: differential entropy must be finite");
  }
  if (!density || !sampler) {
    throw std::invalid_argument("custom: density and sampler are required");
  }
  if (!(support_lo < support_hi)) {
    throw std::invalid_argument("custom: support_lo must be below support_hi");
  }
  DistributionSpec d;
  d.kind_ = DistKind::custom;
  d.mean_ = mean;
  d.variance_ = variance;
  d.custom_entropy_ = differential_entropy;
  d.support_lo_ = support_lo;
  d.support_hi_ = support_hi;
  d.density_ = std::move(density);
  d.sampler_ = std::move(sampler);
  return d;
}

double DistributionSpec::differential_entropy() const {
  switch (kind_) {
    case DistKind::gaussian:
      return 0.5 * std::log(kTwoPi * std::numbers::e * variance_);
    case DistKind::custom:
      return custom_entropy_;
    case DistKind::discrete_finite:
      throw std::logic_error("differential_entropy: discrete law has none");
  }
  throw std::logic_error("unreachable");
}

double DistributionSpec::density(double x) const {
  switch (kind_) {
    case DistKind::gaussian: {
      const double z = x - mean_;
      return std::exp(-0.5 * z * z / variance_) / std::sqrt(kTwoPi * variance_);
    }
    case DistKind::custom:
      return density_(x);
    case DistKind::discrete_finite:
      throw std::logic_error("density: discrete law has no density");
  }
  throw std::logic_error("unreachable");
}

double DistributionSpec::sample(Rng& rng) const {
  switch (kind_) {
    case DistKind::gaussian:
      return rng.normal(mean_, std::sqrt(variance_));
    case DistKind::custom:
      return sampler_(rng);
    case DistKind::discrete_finite: {
      const double u = rng.uniform01();
      for (std::size_t i = 0; i < cumulative_.size(); ++i) {
        if (u < cumulative_[i]) return values_[i];
      }
      return values_.back();
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<double> DistributionSpec::sample(Rng& rng, std::size_t count) const {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample(rng));
  return out;
}

const std::vector<double>& DistributionSpec::values() const {
  if (kind_ != DistKind::discrete_finite) {
    throw std::logic_error("values: not a discrete law");
  }
  return values_;
}

const std::vector<double>& DistributionSpec::weights() const {
  if (kind_ != DistKind::discrete_finite) {
    throw std::logic_error("weights: not a discrete law");
  }
  return weights_;
}

SparsityConfig::SparsityConfig(double omega_rate, int length)
    : omega(omega_rate), n(length) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument("SparsityConfig: omega must lie in (0,1)");
  }
  if (n < 1) {
    throw std::invalid_argument("SparsityConfig: n must be positive");
  }
  k = static_cast<int>(std::floor(omega * static_cast<double>(n)));
  if (k < 1 || k > n) {
    throw std::invalid_argument("SparsityConfig: floor(omega*n) must lie in [1,n]");
  }
}

}  // namespace srd
