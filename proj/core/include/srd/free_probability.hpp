#pragma once

#include <complex>

#include "srd/distribution.hpp"
#include "srd/spectral_measure.hpp"

namespace srd {

/// Stieltjes transform S(z) = integral of 1/(x - z) d mu(x).
/// Defined for Im z > 0 (maps to the upper half plane) and for real z
/// strictly outside the support.
std::complex<double> stieltjes(const SpectralMeasure& measure,
                               std::complex<double> z);

/// S at a real argument outside the support.
double stieltjes_real(const SpectralMeasure& measure, double w);

/// R-transform R(z) = S^{-1}(-z) - 1/z for real z != 0, with S inverted
/// numerically by bracketing on the atom-free gaps of the real axis.
/// Throws NumericError when -z falls outside the range of S on every gap
/// (no real inversion branch), listing the attempted intervals.
double r_transform(const SpectralMeasure& measure, double z);

/// Free compression: the measure nu with R_nu(z) = R_mu(omega * z).
/// For the free Poisson family (rate L, jump j) the result is the free
/// Poisson law of rate L/omega and jump j*omega, in closed form. Measures
/// outside that family are rejected with NumericError; see the module
/// notes in the README.
SpectralMeasure compress(const SpectralMeasure& mu_tilde, double omega);

/// exp of the log-moment: exp( integral of log(x) over the positive part ).
/// This is the limit of |M|^(1/m) for matrices with this limiting spectrum.
/// Returns 0 when the measure carries a positive atom at zero.
double log_potential(const SpectralMeasure& measure);

/// Per-coordinate information bound
///   (rho/2) * log( (1/theta(omega,F)) * delta(rho) / delta(rho/omega) ).
/// Returns +infinity when F is discrete (theta == 0). This is the exact
/// left-hand side used by the lower-bound exclusion test.
double mutual_info_bound(double rho, double omega, const DistributionSpec& f);

/// The paired spectral limits entering the information bound, with their
/// closed-form log-potentials exp(-1)*delta(.).
struct SpectralLimitPair {
  SpectralMeasure mu;  // limit of the m-side sample Gram spectra
  SpectralMeasure nu;  // limit of the (1/omega)-scaled projected spectra
  double g_mu;
  double g_nu;
};

SpectralLimitPair make_spectral_limit_pair(double rho, double omega);

/// Limiting eigenvalue law of the m x m projected Gram matrix
/// A B_S B_S^T A^T (unscaled): the nonzero part of the compressed law, with
/// an extra zero atom of weight 1 - k/m when rho > omega makes the m side
/// rank deficient.
SpectralMeasure projected_spectrum_limit(double rho, double omega);

}  // namespace srd
