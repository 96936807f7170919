#include "srd/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "srd/free_probability.hpp"
#include "srd/hypothesis.hpp"
#include "srd/scalar_functions.hpp"

namespace srd {

namespace {

void check_alpha_omega(double alpha, double omega) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument("omega must lie in (0,1)");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0,1]");
  }
}

double epsilon_at(double rho, double omega, const DistributionSpec& f) {
  if (rho == 0.0) return std::min(omega, 1.0 - omega);
  return bayes_error(MixtureModel(rho, omega, f));
}

}  // namespace

double general_source_rate(double omega, double alpha, bool universal) {
  check_alpha_omega(alpha, omega);
  if (alpha >= 1.0) return 0.0;
  return universal ? omega : (1.0 - alpha) * omega;
}

bool lb_excludes(double rho, double alpha, double omega,
                 const DistributionSpec& f) {
  check_alpha_omega(alpha, omega);
  if (!(rho > 0.0)) throw std::invalid_argument("lb_excludes: rho must be positive");
  if (rho >= 1.0) throw std::invalid_argument("lb_excludes: rho must be below 1");
  if (rho >= omega) return false;
  const double lhs = mutual_info_bound(rho, omega, f);
  if (std::isinf(lhs)) return false;  // discrete F: the bound never bites
  const double rhs = binary_entropy(omega) - binary_entropy(alpha * omega);
  return lhs < rhs;
}

double lower_bound_rate(double alpha, double omega, const DistributionSpec& f,
                        int grid_points) {
  check_alpha_omega(alpha, omega);
  if (grid_points < 2) throw std::invalid_argument("lower_bound_rate: grid too small");

  // largest excluded grid point, then bisect toward the first non-excluded
  // rate to its right (omega itself is never excluded)
  int last_excluded = -1;
  for (int i = grid_points - 1; i >= 1; --i) {
    const double rho = omega * static_cast<double>(i) / grid_points;
    if (lb_excludes(rho, alpha, omega, f)) {
      last_excluded = i;
      break;
    }
  }
  if (last_excluded < 0) return 0.0;

  double lo = omega * static_cast<double>(last_excluded) / grid_points;
  double hi = last_excluded + 1 < grid_points
                  ? omega * static_cast<double>(last_excluded + 1) / grid_points
                  : omega;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (mid >= omega) break;
    if (lb_excludes(mid, alpha, omega, f)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // hi still sitting at omega means every tested rate below it is excluded:
  // the supremum is the sparsity rate itself
  return hi;
}

bool corollary_holds(double alpha, double omega, const DistributionSpec& f) {
  check_alpha_omega(alpha, omega);
  const double theta = normalized_entropy_power(omega, f);
  const double gap = binary_entropy(omega) - binary_entropy(alpha * omega);
  const double rhs = delta(omega) * std::exp(-(2.0 / omega) * gap);
  return theta > rhs;
}

double upper_bound_rate(double alpha, double omega, const DistributionSpec& f,
                        int grid_points) {
  check_alpha_omega(alpha, omega);
  if (grid_points < 2) throw std::invalid_argument("upper_bound_rate: grid too small");
  const double target = alpha * omega;

  if (std::min(omega, 1.0 - omega) <= target) {
    // the rho -> 0 limit already sits at the target error level
    return 0.0;
  }

  std::vector<double> rhos(grid_points);
  std::vector<double> eps(grid_points);
  bool monotone = true;
  int first_achieving = -1;
  for (int i = 0; i < grid_points; ++i) {
    rhos[i] = omega * static_cast<double>(i + 1) / grid_points;
    eps[i] = epsilon_at(rhos[i], omega, f);
    if (i > 0 && eps[i] > eps[i - 1] + 1e-9) monotone = false;
    if (first_achieving < 0 && eps[i] < target) first_achieving = i;
  }
  if (first_achieving < 0) return omega;  // cap: rho > omega always achieves

  if (!monotone) {
    return std::min(omega, rhos[first_achieving]);
  }

  double lo = first_achieving == 0 ? 0.0 : rhos[first_achieving - 1];
  double hi = rhos[first_achieving];
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (epsilon_at(mid, omega, f) < target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::min(omega, hi);
}

DistributionSpec unit_power_gaussian(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("unit_power_gaussian: mu must lie in [0,1]");
  }
  const double variance = 1.0 - mu * mu;
  if (variance < 1e-12) {
    return DistributionSpec::discrete({1.0});
  }
  return DistributionSpec::gaussian(mu, variance);
}

FigureTable figure_curve(int figure_id, double omega, double alpha,
                         int grid_points) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument("figure_curve: omega must lie in (0,1)");
  }
  if (grid_points < 2) {
    throw std::invalid_argument("figure_curve: grid too small");
  }

  FigureTable table;
  table.figure_id = figure_id;
  switch (figure_id) {
    case 1: {
      table.columns = {"alpha", "universal", "basis_specific"};
      for (int i = 0; i < grid_points; ++i) {
        const double a = static_cast<double>(i) / grid_points;  // [0, 1)
        table.rows.push_back({a, general_source_rate(omega, a, true) / omega,
                              general_source_rate(omega, a, false) / omega});
      }
      return table;
    }
    case 2:
    case 3: {
      const double a = alpha >= 0.0 ? alpha : (figure_id == 2 ? 0.3 : 0.95);
      check_alpha_omega(a, omega);
      table.columns = {"mu", "lower", "upper"};
      for (int i = 0; i < grid_points; ++i) {
        const double mu =
            static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const DistributionSpec f = unit_power_gaussian(mu);
        table.rows.push_back({mu, lower_bound_rate(a, omega, f) / omega,
                              upper_bound_rate(a, omega, f) / omega});
      }
      return table;
    }
    default:
      throw std::invalid_argument("figure_curve: figure id must be 1, 2 or 3");
  }
}

}  // namespace srd
