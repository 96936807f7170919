#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace srd {

struct SpectralAtom {
  double location;
  double weight;
};

/// One absolutely continuous component: a pdf supported on [lo, hi] with its
/// cached mass (the integral of pdf over [lo, hi]).
struct SpectralDensity {
  double lo;
  double hi;
  std::function<double(double)> pdf;
  double mass;
};

/// Probability measure on the nonnegative reals: point atoms plus
/// absolutely continuous components. Total mass must be 1 within 1e-8.
class SpectralMeasure {
 public:
  /// Closed-form family marker: atom (1-rate)+ at zero plus the scaled
  /// Marchenko-Pastur density with the given jump. Lets `compress` use the
  /// exact compressed law instead of a numeric reconstruction.
  struct FreePoissonTag {
    double rate;
    double jump;
  };

  SpectralMeasure(std::vector<SpectralAtom> atoms,
                  std::vector<SpectralDensity> components);

  double total_mass() const;
  double zero_atom_weight() const;

  /// Distribution function F(x) = mu((-inf, x]), by quadrature over the
  /// density components.
  double cdf(double x) const;

  double support_min() const;
  double support_max() const;

  const std::vector<SpectralAtom>& atoms() const { return atoms_; }
  const std::vector<SpectralDensity>& components() const { return components_; }

  const std::optional<FreePoissonTag>& free_poisson_tag() const { return fp_tag_; }
  void set_free_poisson_tag(FreePoissonTag tag) { fp_tag_ = tag; }

  const std::optional<double>& mp_ratio() const { return mp_ratio_; }
  void set_mp_ratio(double r) { mp_ratio_ = r; }

 private:
  std::vector<SpectralAtom> atoms_;
  std::vector<SpectralDensity> components_;
  std::optional<FreePoissonTag> fp_tag_;
  std::optional<double> mp_ratio_;
};

/// Marchenko-Pastur law with ratio r in (0,1]: density
/// sqrt((x-a)(b-x)) / (2 pi r x) on [a,b], a = (1-sqrt r)^2, b = (1+sqrt r)^2.
/// No atom in this range of r; total mass 1 and mean 1.
SpectralMeasure mp_law(double r);

/// Free Poisson law with the given rate in (0,1] and jump > 0: atom of
/// weight (1-rate) at zero plus the jump-scaled MP density of mass `rate`.
SpectralMeasure free_poisson(double rate, double jump);

/// Rescales every mass by `keep` and adds an atom of weight 1-keep at zero.
/// Applied to mp_law(r) with keep = r this produces the free Poisson law of
/// rate r (and is tagged as such).
SpectralMeasure add_zero_atom(const SpectralMeasure& measure, double keep);

/// The measure conditioned on the complement of the zero atom: drops the
/// atom at zero and rescales everything else to total mass one.
SpectralMeasure conditioned_nonzero(const SpectralMeasure& measure);

}  // namespace srd
