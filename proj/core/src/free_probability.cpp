#include "srd/free_probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srd/errors.hpp"
#include "srd/quadrature.hpp"
#include "srd/scalar_functions.hpp"

namespace srd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance from a real point to the nearest support item.
double support_distance(const SpectralMeasure& m, double w) {
  double d = kInf;
  for (const auto& a : m.atoms()) d = std::min(d, std::abs(w - a.location));
  for (const auto& c : m.components()) {
    if (w >= c.lo && w <= c.hi) return 0.0;
    d = std::min(d, std::min(std::abs(w - c.lo), std::abs(w - c.hi)));
  }
  return d;
}

// Maximal disjoint support intervals (atoms as degenerate intervals).
std::vector<std::pair<double, double>> support_hull(const SpectralMeasure& m) {
  std::vector<std::pair<double, double>> items;
  for (const auto& a : m.atoms()) items.emplace_back(a.location, a.location);
  for (const auto& c : m.components()) items.emplace_back(c.lo, c.hi);
  std::sort(items.begin(), items.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& it : items) {
    if (!merged.empty() && it.first <= merged.back().second + 1e-12) {
      merged.back().second = std::max(merged.back().second, it.second);
    } else {
      merged.push_back(it);
    }
  }
  return merged;
}

}  // namespace

std::complex<double> stieltjes(const SpectralMeasure& measure,
                               std::complex<double> z) {
  const double re = z.real(), im = z.imag();
  if (im < 0.0) {
    throw std::invalid_argument("stieltjes: lower half plane not supported");
  }
  if (im == 0.0 && support_distance(measure, re) < 1e-12) {
    throw std::invalid_argument(
        "stieltjes: real argument inside the support is rejected");
  }
  std::complex<double> s(0.0, 0.0);
  for (const auto& a : measure.atoms()) {
    s += a.weight / (std::complex<double>(a.location, 0.0) - z);
  }
  for (const auto& c : measure.components()) {
    if (im == 0.0) {
      s += integrate([&](double x) { return c.pdf(x) / (x - re); }, c.lo, c.hi,
                     1e-11);
      continue;
    }
    // 1/(x-z) = ((x-re) + i*im) / ((x-re)^2 + im^2); when re lies inside the
    // component, split there so the near-axis peak sits at panel endpoints
    std::vector<std::pair<double, double>> panels;
    if (re > c.lo && re < c.hi) {
      panels = {{c.lo, re}, {re, c.hi}};
    } else {
      panels = {{c.lo, c.hi}};
    }
    for (const auto& [lo, hi] : panels) {
      const double real_part = integrate(
          [&](double x) {
            const double d = x - re;
            return c.pdf(x) * d / (d * d + im * im);
          },
          lo, hi, 1e-11);
      const double imag_part = integrate(
          [&](double x) {
            const double d = x - re;
            return c.pdf(x) * im / (d * d + im * im);
          },
          lo, hi, 1e-11);
      s += std::complex<double>(real_part, imag_part);
    }
  }
  return s;
}

double stieltjes_real(const SpectralMeasure& measure, double w) {
  return stieltjes(measure, {w, 0.0}).real();
}

double r_transform(const SpectralMeasure& measure, double z) {
  if (z == 0.0 || !std::isfinite(z)) {
    throw std::invalid_argument("r_transform: z must be finite and nonzero");
  }
  const double target = -z;
  const auto hull = support_hull(measure);
  const double span = std::max(1.0, hull.back().second - hull.front().first);
  const double edge_offset = 1e-9 * span;

  // Candidate gaps of the real axis, ordered left to right. S is strictly
  // increasing on each; find the gap whose range brackets the target.
  struct Gap {
    double lo, hi;  // possibly infinite
  };
  std::vector<Gap> gaps;
  gaps.push_back({-kInf, hull.front().first});
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    gaps.push_back({hull[i].second, hull[i + 1].first});
  }
  gaps.push_back({hull.back().second, kInf});

  std::ostringstream attempted;
  for (const auto& gap : gaps) {
    double lo = gap.lo, hi = gap.hi;
    // move finite ends just off the support; expand infinite ends outward
    // until the transform's sign settles
    // The measure lives on [0, inf): S is positive left of the support and
    // negative right of it, so those gaps can only bracket matching signs.
    if (!std::isfinite(lo) && target <= 0.0) {
      attempted << " [-inf, " << hi << "]";
      continue;
    }
    if (!std::isfinite(hi) && target >= 0.0) {
      attempted << " [" << lo << ", inf]";
      continue;
    }
    double flo, fhi;
    if (std::isfinite(lo)) {
      lo += edge_offset;
      flo = stieltjes_real(measure, lo) - target;
    } else {
      lo = gap.hi - std::max(1.0, span);
      flo = stieltjes_real(measure, lo) - target;
      for (int i = 0; i < 60 && flo > 0.0; ++i) {
        lo = gap.hi - (gap.hi - lo) * 2.0;
        flo = stieltjes_real(measure, lo) - target;
      }
    }
    if (std::isfinite(hi)) {
      hi -= edge_offset;
      fhi = stieltjes_real(measure, hi) - target;
    } else {
      hi = gap.lo + std::max(1.0, span);
      fhi = stieltjes_real(measure, hi) - target;
      for (int i = 0; i < 60 && fhi < 0.0; ++i) {
        hi = gap.lo + (hi - gap.lo) * 2.0;
        fhi = stieltjes_real(measure, hi) - target;
      }
    }
    attempted << " [" << lo << ", " << hi << "]";
    if (!(lo < hi) || flo * fhi > 0.0) continue;

    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++i) {
      const double mid = 0.5 * (lo + hi);
      const double fm = stieltjes_real(measure, mid) - target;
      if (flo * fm <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    const double w = 0.5 * (lo + hi);
    return w - 1.0 / z;
  }

  std::ostringstream msg;
  msg << "r_transform: no real inversion branch for z = " << z
      << "; attempted intervals:" << attempted.str();
  throw NumericError(msg.str());
}

SpectralMeasure compress(const SpectralMeasure& mu_tilde, double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) {
    throw std::invalid_argument("compress: omega must lie in (0,1]");
  }
  if (omega == 1.0) {
    return mu_tilde;  // identity compression
  }
  const auto& tag = mu_tilde.free_poisson_tag();
  if (!tag) {
    throw NumericError(
        "compress: input is not in the tracked free-Poisson family; the "
        "general numeric reconstruction is not provided");
  }
  return free_poisson(tag->rate / omega, tag->jump * omega);
}

double log_potential(const SpectralMeasure& measure) {
  if (measure.zero_atom_weight() > 0.0) return 0.0;
  double log_moment = 0.0;
  for (const auto& a : measure.atoms()) {
    if (a.weight == 0.0) continue;
    if (a.location <= 0.0) {
      throw NumericError("log_potential: atom at a nonpositive location");
    }
    log_moment += a.weight * std::log(a.location);
  }
  for (const auto& c : measure.components()) {
    log_moment += integrate(
        [&](double x) { return x > 0.0 ? std::log(x) * c.pdf(x) : 0.0; },
        c.lo, c.hi, 1e-11);
  }
  if (!std::isfinite(log_moment)) {
    throw NumericError("log_potential: divergent log-moment");
  }
  return std::exp(log_moment);
}

double mutual_info_bound(double rho, double omega, const DistributionSpec& f) {
  if (!(rho > 0.0 && omega > 0.0 && omega < 1.0 && rho <= omega)) {
    throw std::invalid_argument(
        "mutual_info_bound: requires 0 < rho <= omega < 1");
  }
  const double theta = normalized_entropy_power(omega, f);
  if (theta == 0.0) return kInf;
  return 0.5 * rho *
         std::log((1.0 / theta) * delta(rho) / delta(rho / omega));
}

SpectralLimitPair make_spectral_limit_pair(double rho, double omega) {
  if (!(rho > 0.0 && rho <= omega && omega < 1.0)) {
    throw std::invalid_argument(
        "make_spectral_limit_pair: requires 0 < rho <= omega < 1");
  }
  return {mp_law(rho), mp_law(rho / omega), std::exp(-1.0) * delta(rho),
          std::exp(-1.0) * delta(rho / omega)};
}

SpectralMeasure projected_spectrum_limit(double rho, double omega) {
  if (!(rho > 0.0 && rho <= 1.0) || !(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument(
        "projected_spectrum_limit: need rho in (0,1], omega in (0,1)");
  }
  const SpectralMeasure mu_tilde = free_poisson(rho, 1.0);
  const SpectralMeasure nu_tilde = compress(mu_tilde, omega);
  const SpectralMeasure nonzero = conditioned_nonzero(nu_tilde);
  if (rho <= omega) return nonzero;
  // rank deficiency on the m side: only k of the m eigenvalues are nonzero
  return add_zero_atom(nonzero, omega / rho);
}

}  // namespace srd
