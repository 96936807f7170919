#include <cmath>
#include <vector>

#include <stdexcept>

#include <doctest.h>

#include "srd/bounds.hpp"
#include "srd/free_probability.hpp"
#include "srd/scalar_functions.hpp"

using namespace srd;

namespace {

const DistributionSpec kStdGauss = DistributionSpec::gaussian(0.0, 1.0);
const DistributionSpec kRademacher = DistributionSpec::discrete({-1.0, 1.0});

// Independent root of the plateau condition
//   theta(omega, N(mu, 1-mu^2)) == delta(omega) exp(-(2/omega) gap)
double corollary_mu_root(double alpha, double omega) {
  const double gap = binary_entropy(omega) - binary_entropy(alpha * omega);
  const double rhs = delta(omega) * std::exp(-(2.0 / omega) * gap);
  // (1-mu^2)/(1-omega mu^2) = rhs  =>  mu^2 = (1-rhs)/(1-omega*rhs)
  return std::sqrt((1.0 - rhs) / (1.0 - omega * rhs));
}

}  // namespace

TEST_CASE("general source rate") {
  CHECK(general_source_rate(0.35, 0.3, true) == doctest::Approx(0.35));
  CHECK(general_source_rate(0.35, 0.3, false) == doctest::Approx(0.245));
  CHECK(general_source_rate(0.35, 1.0, true) == 0.0);
  CHECK(general_source_rate(0.35, 1.0, false) == 0.0);
  CHECK(general_source_rate(0.35, 0.0, false) == doctest::Approx(0.35));
}

TEST_CASE("exclusion test reference points") {
  // frozen: LHS(0.34; omega=0.35, theta=1) = 0.11934... < H(0.35) = 0.64745
  CHECK(mutual_info_bound(0.34, 0.35, kStdGauss) ==
        doctest::Approx(0.11934335619990265).epsilon(1e-10));
  CHECK(lb_excludes(0.34, 0.0, 0.35, kStdGauss));
  CHECK_FALSE(lb_excludes(0.2, 0.3, 0.35, kRademacher));
  CHECK_FALSE(lb_excludes(0.35, 0.3, 0.35, kStdGauss));  // rho = omega gate
  CHECK_THROWS_AS(lb_excludes(1.0, 0.3, 0.35, kStdGauss), std::invalid_argument);
}

TEST_CASE("exclusion test equals the shared information bound") {
  for (double rho = 0.02; rho < 0.35; rho += 0.03) {
    for (double alpha : {0.0, 0.3, 0.7}) {
      const bool direct =
          rho < 0.35 && mutual_info_bound(rho, 0.35, kStdGauss) <
                            binary_entropy(0.35) - binary_entropy(alpha * 0.35);
      CHECK(lb_excludes(rho, alpha, 0.35, kStdGauss) == direct);
    }
  }
}

TEST_CASE("corollary reference points") {
  CHECK(corollary_holds(0.3, 0.35, kStdGauss));
  CHECK_FALSE(corollary_holds(0.3, 0.35, kRademacher));
  // frozen RHS of the plateau condition at omega=0.35, alpha=0.3
  const double gap = binary_entropy(0.35) - binary_entropy(0.105);
  const double rhs = delta(0.35) * std::exp(-(2.0 / 0.35) * gap);
  CHECK(rhs == doctest::Approx(0.37528970255740515).epsilon(1e-12));
}

TEST_CASE("corollary boundary in the unit-power gaussian family") {
  const double mu_star = corollary_mu_root(0.3, 0.35);
  CHECK(mu_star == doctest::Approx(0.84804181981051179).epsilon(1e-9));
  CHECK(corollary_holds(0.3, 0.35, unit_power_gaussian(mu_star - 1e-6)));
  CHECK_FALSE(corollary_holds(0.3, 0.35, unit_power_gaussian(mu_star + 1e-6)));
}

TEST_CASE("lower bound sits at omega exactly when the corollary holds") {
  for (double alpha : {0.0, 0.3, 0.5}) {
    REQUIRE(corollary_holds(alpha, 0.35, kStdGauss));
    CHECK(lower_bound_rate(alpha, 0.35, kStdGauss) == 0.35);
  }
  for (double mu : {0.0, 0.4, 0.8}) {
    const auto f = unit_power_gaussian(mu);
    REQUIRE(corollary_holds(0.3, 0.35, f));
    CHECK(lower_bound_rate(0.3, 0.35, f) == 0.35);
  }
}

TEST_CASE("lower bound for discrete laws is zero") {
  for (double alpha : {0.0, 0.3, 0.95}) {
    CHECK(lower_bound_rate(alpha, 0.35, kRademacher) == 0.0);
  }
}

TEST_CASE("lower bound off the plateau: frozen crossing point") {
  const auto f = DistributionSpec::gaussian(0.9, 0.19);
  CHECK(normalized_entropy_power(0.35, f) ==
        doctest::Approx(0.26517794836008374).epsilon(1e-12));
  const double lower = lower_bound_rate(0.3, 0.35, f);
  CHECK(lower < 0.35);
  // frozen independent bisection of the exclusion boundary
  CHECK(lower == doctest::Approx(0.32282357558149239).epsilon(1e-6));

  // cross-check against a finer independent grid scan
  double scan_sup = 0.0;
  const int grid = 20000;
  for (int i = 1; i < grid; ++i) {
    const double rho = 0.35 * i / grid;
    if (lb_excludes(rho, 0.3, 0.35, f)) scan_sup = rho;
  }
  CHECK(std::abs(lower - scan_sup) < 0.35 / grid + 1e-9);
}

TEST_CASE("lower bound is nondecreasing in theta across the gaussian family") {
  // theta falls as mu rises, so the bound must not increase with mu
  double prev = 1.0;
  for (double mu = 0.0; mu <= 0.99; mu += 0.03) {
    const double lb = lower_bound_rate(0.3, 0.35, unit_power_gaussian(mu));
    CHECK(lb <= prev + 1e-9);
    prev = lb;
  }
}

TEST_CASE("upper bound reference points") {
  // epsilon never reaches alpha*omega = 0.105 on (0, 0.35]: capped at omega
  CHECK(upper_bound_rate(0.3, 0.35, kStdGauss) == doctest::Approx(0.35));
  // frozen root of epsilon(rho) = 0.3325 for the standard gaussian
  CHECK(upper_bound_rate(0.95, 0.35, kStdGauss) ==
        doctest::Approx(0.27476248788846269).epsilon(1e-6));
  // alpha = 1: the zero-rate limit already achieves the target
  CHECK(upper_bound_rate(1.0, 0.35, kStdGauss) == 0.0);
}

TEST_CASE("upper bound stays within (0, omega] and brackets the lower bound") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    for (double mu : {0.0, 0.5, 0.9}) {
      const auto f = unit_power_gaussian(mu);
      const double up = upper_bound_rate(alpha, 0.35, f, 64);
      const double low = lower_bound_rate(alpha, 0.35, f, 4000);
      CHECK(up <= 0.35 + 1e-12);
      CHECK(low <= 0.35 + 1e-12);
      CHECK(low <= up + 1e-6);
    }
  }
}

TEST_CASE("figure 1 table is exact") {
  const FigureTable t = figure_curve(1, 0.35, -1.0, 100);
  REQUIRE(t.rows.size() == 100);
  CHECK(t.columns[0] == "alpha");
  for (const auto& row : t.rows) {
    CHECK(std::abs(row[1] - 1.0) < 1e-12);
    CHECK(std::abs(row[2] - (1.0 - row[0])) < 1e-12);
  }
}

TEST_CASE("figure 2 plateau and figure 3 endpoints") {
  const FigureTable f2 = figure_curve(2, 0.35, -1.0, 21);
  CHECK(f2.columns[1] == "lower");
  // mu = 0: both normalized bounds sit at 1
  CHECK(f2.rows.front()[1] == doctest::Approx(1.0));
  CHECK(f2.rows.front()[2] == doctest::Approx(1.0));
  // mu = 0.8 is still on the plateau, mu = 0.9 is past the boundary
  CHECK(f2.rows[16][1] == doctest::Approx(1.0));
  CHECK(f2.rows[18][1] < 1.0);
  // mu = 1 degenerates to a discrete law
  CHECK(f2.rows.back()[1] == 0.0);

  const FigureTable f3 = figure_curve(3, 0.35, -1.0, 11);
  CHECK(f3.rows.back()[1] == 0.0);           // lower at mu = 1
  CHECK(f3.rows[9][2] < 1.0 - 1e-6);         // upper dips below omega near mu = 1
  CHECK_THROWS_AS(figure_curve(4, 0.35, -1.0, 10), std::invalid_argument);
}
