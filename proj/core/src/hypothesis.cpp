#include "srd/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "srd/errors.hpp"
#include "srd/quadrature.hpp"

namespace srd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

double log_normal_pdf(double x, double mean, double variance) {
  const double z = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * variance) -
         0.5 * z * z / variance;
}

double log_sum_exp(const std::vector<double>& terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (m == -kInf) return -kInf;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

// log of the alternative density W + sqrt(rho) U
double log_alt_density(const MixtureModel& model, double x) {
  const double v0 = model.null_variance;
  const double sr = std::sqrt(model.rho);
  switch (model.f.kind()) {
    case DistKind::gaussian: {
      const double m1 = sr * model.f.mean();
      const double v1 = v0 + model.rho * model.f.variance();
      return log_normal_pdf(x, m1, v1);
    }
    case DistKind::discrete_finite: {
      const auto& vals = model.f.values();
      const auto& wts = model.f.weights();
      std::vector<double> terms;
      terms.reserve(vals.size());
      for (std::size_t j = 0; j < vals.size(); ++j) {
        if (wts[j] == 0.0) continue;
        terms.push_back(std::log(wts[j]) + log_normal_pdf(x, sr * vals[j], v0));
      }
      return log_sum_exp(terms);
    }
    case DistKind::custom: {
      if (model.rho == 0.0) return log_normal_pdf(x, 0.0, v0);
      const auto integrand = [&](double u) {
        return std::exp(log_normal_pdf(x, sr * u, v0)) * model.f.density(u);
      };
      const double lo = model.f.support_lo();
      const double hi = model.f.support_hi();
      double value;
      if (std::isfinite(lo) && std::isfinite(hi)) {
        value = integrate(integrand, lo, hi, 1e-11);
      } else {
        value = integrate_real_line(integrand, 1e-11);
      }
      return value > 0.0 ? std::log(value) : -kInf;
    }
  }
  throw std::logic_error("unreachable");
}

// sign of ln(omega f1) - ln((1-omega) f0); exact ties count as negative
int ratio_sign(const MixtureModel& model, double x) {
  const double g = std::log(model.omega) + log_alt_density(model, x) -
                   std::log1p(-model.omega) -
                   log_normal_pdf(x, 0.0, model.null_variance);
  return g > 0.0 ? 1 : -1;
}

// Probability mass beyond a window edge, maximized over the two hypotheses.
// Boundaries hiding past an edge whose mass underflows this level cannot
// move the error probability at any tolerance the module promises.
constexpr double kNegligibleTailMass = 1e-60;

double tail_mass_outside(const MixtureModel& model, double edge, bool below) {
  const double sd0 = std::sqrt(model.null_variance);
  auto lower_mass = [&](double mean, double sd) {
    const double t = (edge - mean) / sd;
    return below ? normal_cdf(t) : normal_cdf(-t);
  };
  double mass = lower_mass(0.0, sd0);
  const double sr = std::sqrt(model.rho);
  switch (model.f.kind()) {
    case DistKind::gaussian: {
      const double sd1 =
          std::sqrt(model.null_variance + model.rho * model.f.variance());
      mass = std::max(mass, lower_mass(sr * model.f.mean(), sd1));
      break;
    }
    case DistKind::discrete_finite: {
      double alt = 0.0;
      const auto& vals = model.f.values();
      const auto& wts = model.f.weights();
      for (std::size_t j = 0; j < vals.size(); ++j) {
        alt += wts[j] * lower_mass(sr * vals[j], sd0);
      }
      mass = std::max(mass, alt);
      break;
    }
    case DistKind::custom:
      break;  // custom tails use the sign-stability probe instead
  }
  return mass;
}

// Expected sign of the log ratio far in each tail, when it can be read off
// the model; 0 when unknown (custom F).
struct TailSigns {
  int left = 0;
  int right = 0;
};

TailSigns expected_tail_signs(const MixtureModel& model) {
  TailSigns t;
  switch (model.f.kind()) {
    case DistKind::gaussian:
      // alternative variance strictly dominates, both tails accept
      t.left = t.right = 1;
      return t;
    case DistKind::discrete_finite: {
      double lo = kInf, hi = -kInf;
      for (double v : model.f.values()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      t.right = hi > 0.0 ? 1 : -1;
      t.left = lo < 0.0 ? 1 : -1;
      return t;
    }
    case DistKind::custom:
      return t;
  }
  return t;
}

double interval_prob_normal(double lo, double hi, double mean, double stddev) {
  const double a = lo == -kInf ? 0.0 : normal_cdf((lo - mean) / stddev);
  const double b = hi == kInf ? 1.0 : normal_cdf((hi - mean) / stddev);
  return std::max(0.0, b - a);
}

double null_prob(const MixtureModel& model, const ThresholdSet& set) {
  const double sd = std::sqrt(model.null_variance);
  double p = 0.0;
  for (const auto& iv : set.intervals()) {
    p += interval_prob_normal(iv.lo, iv.hi, 0.0, sd);
  }
  return p;
}

double alt_prob(const MixtureModel& model, const ThresholdSet& set) {
  const double v0 = model.null_variance;
  const double sd0 = std::sqrt(v0);
  const double sr = std::sqrt(model.rho);
  switch (model.f.kind()) {
    case DistKind::gaussian: {
      const double m1 = sr * model.f.mean();
      const double sd1 = std::sqrt(v0 + model.rho * model.f.variance());
      double p = 0.0;
      for (const auto& iv : set.intervals()) {
        p += interval_prob_normal(iv.lo, iv.hi, m1, sd1);
      }
      return p;
    }
    case DistKind::discrete_finite: {
      const auto& vals = model.f.values();
      const auto& wts = model.f.weights();
      double p = 0.0;
      for (const auto& iv : set.intervals()) {
        for (std::size_t j = 0; j < vals.size(); ++j) {
          p += wts[j] * interval_prob_normal(iv.lo, iv.hi, sr * vals[j], sd0);
        }
      }
      return p;
    }
    case DistKind::custom: {
      if (model.rho == 0.0) return null_prob(model, set);
      const auto integrand = [&](double u) {
        double p = 0.0;
        for (const auto& iv : set.intervals()) {
          p += interval_prob_normal(iv.lo, iv.hi, sr * u, sd0);
        }
        return p * model.f.density(u);
      };
      const double lo = model.f.support_lo();
      const double hi = model.f.support_hi();
      if (std::isfinite(lo) && std::isfinite(hi)) {
        return integrate(integrand, lo, hi, 1e-9);
      }
      return integrate_real_line(integrand, 1e-9);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

MixtureModel::MixtureModel(double rate, double prior, DistributionSpec dist)
    : rho(rate), omega(prior), f(std::move(dist)) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("MixtureModel: rho must be nonnegative");
  }
  if (!(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument("MixtureModel: prior must lie in (0,1)");
  }
  null_variance = omega * f.second_moment();
  if (!(null_variance > 0.0)) {
    throw std::invalid_argument("MixtureModel: null variance must be positive");
  }
}

ThresholdSet::ThresholdSet(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
  for (const auto& iv : intervals_) {
    if (!(iv.lo < iv.hi)) {
      throw std::invalid_argument("ThresholdSet: each interval needs lo < hi");
    }
  }
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < intervals_.size(); ++i) {
    if (intervals_[i].lo < intervals_[i - 1].hi) {
      throw std::invalid_argument("ThresholdSet: intervals must be disjoint");
    }
  }
}

ThresholdSet ThresholdSet::whole_line() {
  return ThresholdSet({{-kInf, kInf}});
}

bool ThresholdSet::contains(double x) const {
  for (const auto& iv : intervals_) {
    if (x < iv.lo) return false;
    if (x < iv.hi) return true;
  }
  return false;
}

std::vector<double> ThresholdSet::finite_boundaries() const {
  std::vector<double> out;
  for (const auto& iv : intervals_) {
    if (std::isfinite(iv.lo)) out.push_back(iv.lo);
    if (std::isfinite(iv.hi)) out.push_back(iv.hi);
  }
  return out;
}

ThresholdSet ThresholdSet::with_shifted_boundary(std::size_t b, double shift) const {
  std::vector<Interval> shifted = intervals_;
  std::size_t seen = 0;
  for (auto& iv : shifted) {
    if (std::isfinite(iv.lo)) {
      if (seen == b) iv.lo += shift;
      ++seen;
    }
    if (std::isfinite(iv.hi)) {
      if (seen == b) iv.hi += shift;
      ++seen;
    }
  }
  if (seen <= b) {
    throw std::out_of_range("with_shifted_boundary: no such boundary");
  }
  // drop collapsed intervals, then merge any overlap the shift introduced
  std::vector<Interval> kept;
  for (const auto& iv : shifted) {
    if (iv.lo < iv.hi) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Interval& a, const Interval& b2) { return a.lo < b2.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : kept) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  ThresholdSet out;
  out.intervals_ = std::move(merged);
  return out;
}

double null_density(const MixtureModel& model, double x) {
  return std::exp(log_normal_pdf(x, 0.0, model.null_variance));
}

double alt_density(const MixtureModel& model, double x) {
  if (model.rho == 0.0) return null_density(model, x);
  return std::exp(log_alt_density(model, x));
}

ThresholdSet optimal_threshold_set(const MixtureModel& model) {
  if (model.rho == 0.0) {
    // identical densities: the prior decides globally, ties go to the null
    return model.omega > 0.5 ? ThresholdSet::whole_line() : ThresholdSet();
  }

  const double v0 = model.null_variance;
  const double v1 = v0 + model.rho * model.f.variance();
  const double m1 = std::sqrt(model.rho) * model.f.mean();
  const double sd0 = std::sqrt(v0);
  const double sd1 = std::sqrt(v1);

  double lo = std::min(-8.0 * sd0, m1 - 8.0 * sd1);
  double hi = std::max(8.0 * sd0, m1 + 8.0 * sd1);
  const double center = 0.5 * (lo + hi);
  const TailSigns expect = expected_tail_signs(model);
  constexpr int kScanPoints = 10000;
  constexpr int kMaxWidenings = 3;

  for (int attempt = 0;; ++attempt) {
    std::vector<double> xs(kScanPoints + 1);
    std::vector<int> signs(kScanPoints + 1);
    const double step = (hi - lo) / kScanPoints;
    for (int i = 0; i <= kScanPoints; ++i) {
      xs[i] = lo + step * i;
      signs[i] = ratio_sign(model, xs[i]);
    }

    bool edges_ok = true;
    if (expect.left != 0 && signs.front() != expect.left &&
        tail_mass_outside(model, lo, true) >= kNegligibleTailMass) {
      edges_ok = false;  // a boundary with representable mass is still outside
    }
    if (expect.right != 0 && signs.back() != expect.right &&
        tail_mass_outside(model, hi, false) >= kNegligibleTailMass) {
      edges_ok = false;
    }
    if (expect.left == 0) {
      // unknown tails: confirm the edge signs persist one window out
      if (ratio_sign(model, lo - (hi - lo)) != signs.front()) edges_ok = false;
      if (ratio_sign(model, hi + (hi - lo)) != signs.back()) edges_ok = false;
    }
    if (!edges_ok) {
      if (attempt == kMaxWidenings) {
        std::ostringstream msg;
        msg << "optimal_threshold_set: acceptance boundary still outside the "
               "scan window after "
            << kMaxWidenings << " widenings (window [" << lo << ", " << hi
            << "])";
        throw NumericError(msg.str());
      }
      const double half = (hi - lo);  // doubled width
      lo = center - half;
      hi = center + half;
      continue;
    }

    std::vector<double> boundaries;
    for (int i = 0; i < kScanPoints; ++i) {
      if (signs[i] == signs[i + 1]) continue;
      double a = xs[i], b = xs[i + 1];
      const int sa = signs[i];
      while (b - a > 1e-10) {
        const double mid = 0.5 * (a + b);
        if (ratio_sign(model, mid) == sa) {
          a = mid;
        } else {
          b = mid;
        }
      }
      boundaries.push_back(0.5 * (a + b));
    }

    std::vector<Interval> accepted;
    int sign = signs.front();
    double seg_lo = -kInf;
    for (std::size_t j = 0; j <= boundaries.size(); ++j) {
      const double seg_hi = j < boundaries.size() ? boundaries[j] : kInf;
      if (sign > 0) accepted.push_back({seg_lo, seg_hi});
      seg_lo = seg_hi;
      sign = -sign;
    }
    return ThresholdSet(std::move(accepted));
  }
}

double bayes_error(const MixtureModel& model, const ThresholdSet& set) {
  const double p0 = null_prob(model, set);
  const double p1 = alt_prob(model, set);
  return (1.0 - model.omega) * p0 + model.omega * (1.0 - p1);
}

double bayes_error(const MixtureModel& model) {
  return bayes_error(model, optimal_threshold_set(model));
}

MonteCarloEstimate bayes_error_monte_carlo(const MixtureModel& model,
                                           const ThresholdSet& set,
                                           std::int64_t draws,
                                           std::uint64_t seed) {
  if (draws < 1) {
    throw std::invalid_argument("bayes_error_monte_carlo: draws must be >= 1");
  }
  Rng rng(seed);
  const double sd0 = std::sqrt(model.null_variance);
  const double sr = std::sqrt(model.rho);
  std::int64_t mismatches = 0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const bool z = rng.uniform01() < model.omega;
    double x = rng.normal(0.0, sd0);
    if (z) x += sr * model.f.sample(rng);
    if (set.contains(x) != z) ++mismatches;
  }
  const double value = static_cast<double>(mismatches) / static_cast<double>(draws);
  const double se = std::sqrt(std::max(value * (1.0 - value), 1e-300) /
                              static_cast<double>(draws));
  return {value, se, draws};
}

}  // namespace srd
