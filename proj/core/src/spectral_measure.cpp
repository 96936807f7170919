#include "srd/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srd/errors.hpp"
#include "srd/quadrature.hpp"

namespace srd {

namespace {
constexpr double kZeroAtomEps = 1e-12;
}

SpectralMeasure::SpectralMeasure(std::vector<SpectralAtom> atoms,
                                 std::vector<SpectralDensity> components)
    : atoms_(std::move(atoms)), components_(std::move(components)) {
  for (const auto& a : atoms_) {
    if (a.weight < 0.0) {
      throw std::invalid_argument("SpectralMeasure: negative atom weight");
    }
    if (a.location < -1e-10) {
      throw std::invalid_argument("SpectralMeasure: atom below the nonnegative axis");
    }
  }
  for (const auto& c : components_) {
    if (!(c.lo < c.hi) || c.lo < -1e-10 || c.mass < 0.0) {
      throw std::invalid_argument("SpectralMeasure: bad density component");
    }
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const SpectralAtom& a, const SpectralAtom& b) {
              return a.location < b.location;
            });
  std::sort(components_.begin(), components_.end(),
            [](const SpectralDensity& a, const SpectralDensity& b) {
              return a.lo < b.lo;
            });
  const double mass = total_mass();
  if (std::abs(mass - 1.0) > 1e-8) {
    throw std::invalid_argument("SpectralMeasure: total mass " +
                                std::to_string(mass) + " is not 1 within 1e-8");
  }
}

double SpectralMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  for (const auto& c : components_) m += c.mass;
  return m;
}

double SpectralMeasure::zero_atom_weight() const {
  double w = 0.0;
  for (const auto& a : atoms_) {
    if (std::abs(a.location) <= kZeroAtomEps) w += a.weight;
  }
  return w;
}

double SpectralMeasure::cdf(double x) const {
  double p = 0.0;
  for (const auto& a : atoms_) {
    if (a.location <= x) p += a.weight;
  }
  for (const auto& c : components_) {
    if (x <= c.lo) continue;
    if (x >= c.hi) {
      p += c.mass;
    } else {
      p += integrate(c.pdf, c.lo, x, 1e-10);
    }
  }
  return std::min(p, 1.0);
}

double SpectralMeasure::support_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) m = std::min(m, a.location);
  for (const auto& c : components_) m = std::min(m, c.lo);
  return m;
}

double SpectralMeasure::support_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) m = std::max(m, a.location);
  for (const auto& c : components_) m = std::max(m, c.hi);
  return m;
}

SpectralMeasure mp_law(double r) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::invalid_argument("mp_law: ratio must lie in (0,1]");
  }
  const double sr = std::sqrt(r);
  const double a = (1.0 - sr) * (1.0 - sr);
  const double b = (1.0 + sr) * (1.0 + sr);
  auto pdf = [r, a, b](double x) {
    if (x <= a || x >= b) return 0.0;
    return std::sqrt((x - a) * (b - x)) / (2.0 * std::numbers::pi * r * x);
  };
  SpectralMeasure m({}, {{a, b, pdf, 1.0}});
  m.set_mp_ratio(r);
  if (r == 1.0) m.set_free_poisson_tag({1.0, 1.0});
  return m;
}

SpectralMeasure free_poisson(double rate, double jump) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("free_poisson: rate must be positive");
  }
  if (!(jump > 0.0)) {
    throw std::invalid_argument("free_poisson: jump must be positive");
  }
  const double sr = std::sqrt(rate);
  const double a = jump * (1.0 - sr) * (1.0 - sr);
  const double b = jump * (1.0 + sr) * (1.0 + sr);
  auto pdf = [jump, a, b](double x) {
    if (x <= a || x >= b) return 0.0;
    return std::sqrt((x - a) * (b - x)) / (2.0 * std::numbers::pi * jump * x);
  };
  std::vector<SpectralAtom> atoms;
  if (rate < 1.0) atoms.push_back({0.0, 1.0 - rate});
  SpectralMeasure m(std::move(atoms), {{a, b, pdf, std::min(rate, 1.0)}});
  m.set_free_poisson_tag({rate, jump});
  return m;
}

SpectralMeasure add_zero_atom(const SpectralMeasure& measure, double keep) {
  if (!(keep > 0.0 && keep <= 1.0)) {
    throw std::invalid_argument("add_zero_atom: keep must lie in (0,1]");
  }
  std::vector<SpectralAtom> atoms;
  atoms.push_back({0.0, 1.0 - keep});
  for (const auto& a : measure.atoms()) {
    atoms.push_back({a.location, keep * a.weight});
  }
  std::vector<SpectralDensity> comps;
  for (const auto& c : measure.components()) {
    auto pdf = c.pdf;
    comps.push_back({c.lo, c.hi,
                     [pdf, keep](double x) { return keep * pdf(x); },
                     keep * c.mass});
  }
  SpectralMeasure out(std::move(atoms), std::move(comps));
  // mp_law(r) rescaled by its own ratio is exactly the free Poisson law
  if (measure.mp_ratio() && std::abs(keep - *measure.mp_ratio()) < 1e-12) {
    out.set_free_poisson_tag({*measure.mp_ratio(), 1.0});
  }
  return out;
}

SpectralMeasure conditioned_nonzero(const SpectralMeasure& measure) {
  const double w0 = measure.zero_atom_weight();
  const double keep = 1.0 - w0;
  if (!(keep > 1e-12)) {
    throw std::invalid_argument("conditioned_nonzero: measure is all zero atom");
  }
  std::vector<SpectralAtom> atoms;
  for (const auto& a : measure.atoms()) {
    if (std::abs(a.location) <= 1e-12) continue;
    atoms.push_back({a.location, a.weight / keep});
  }
  std::vector<SpectralDensity> comps;
  for (const auto& c : measure.components()) {
    auto pdf = c.pdf;
    comps.push_back({c.lo, c.hi,
                     [pdf, keep](double x) { return pdf(x) / keep; },
                     c.mass / keep});
  }
  return SpectralMeasure(std::move(atoms), std::move(comps));
}

}  // namespace srd
