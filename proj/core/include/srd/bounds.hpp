#pragma once

#include <array>
#include <string>
#include <vector>

#include "srd/distribution.hpp"

namespace srd {

enum class CurveKind {
  general_universal,
  general_basis_specific,
  lower_bound,
  upper_bound,
  empirical,
};

struct RateDistortionPoint {
  double alpha;  // normalized distortion in [0,1]
  double rho;    // sampling rate in [0,1]
  CurveKind kind;
};

/// Rate of the arbitrary (non-random) source: omega in the universal
/// setting, (1-alpha)*omega in the basis-specific setting, and 0 at
/// alpha = 1 in both.
double general_source_rate(double omega, double alpha, bool universal);

/// Exclusion test of the information-theoretic lower bound: true when the
/// pair (rho, alpha) is provably not achievable, i.e. rho < omega and
///   (rho/2) log( (1/theta) * delta(rho)/delta(rho/omega) )
///        < H(omega) - H(alpha*omega).
/// A discrete F (theta = 0) sends the left side to +infinity, so the test
/// is false.
bool lb_excludes(double rho, double alpha, double omega,
                 const DistributionSpec& f);

/// sup{ rho in (0, omega] : lb_excludes(rho, ...) }, located by a dense
/// grid scan followed by bisection on the bracketing interval. Returns 0
/// when no rate is excluded, and exactly omega when the exclusion holds
/// all the way up to the sparsity rate.
double lower_bound_rate(double alpha, double omega, const DistributionSpec& f,
                        int grid_points = 10000);

/// Sufficient condition for the lower bound to sit at omega:
///   theta(omega,F) > delta(omega) * exp(-(2/omega)[H(omega) - H(alpha*omega)]).
bool corollary_holds(double alpha, double omega, const DistributionSpec& f);

/// Achievability bound of the thresholding estimator:
///   min( omega, inf{ rho in (0, omega] : epsilon(rho, omega, F) < alpha*omega } ).
/// epsilon is checked for monotonicity on the scan grid before bisection;
/// when the check fails the bound falls back to the smallest achieving grid
/// point.
double upper_bound_rate(double alpha, double omega, const DistributionSpec& f,
                        int grid_points = 128);

/// Data table for one reproduced figure; column names match the CSV schema.
struct FigureTable {
  int figure_id;
  std::array<std::string, 3> columns;
  std::vector<std::array<double, 3>> rows;
};

/// figure 1: (alpha, universal, basis_specific) over an alpha grid on
/// [0, 1), rates normalized by omega.
/// figures 2 and 3: (mu, lower, upper) over a mu grid on [0, 1] for
/// F = N(mu, 1 - mu^2) (the mu = 1 endpoint degenerates to the unit atom),
/// rates normalized by omega. alpha defaults to 0.3 for figure 2 and 0.95
/// for figure 3 when the passed value is negative.
FigureTable figure_curve(int figure_id, double omega, double alpha,
                         int grid_points);

/// The Gaussian-family law N(mu, 1-mu^2) used by the figure curves; the
/// mu = 1 endpoint collapses to a discrete unit atom.
DistributionSpec unit_power_gaussian(double mu);

}  // namespace srd
