#include <cmath>

#include <stdexcept>

#include <doctest.h>

#include "srd/distribution.hpp"

using namespace srd;

TEST_CASE("gaussian spec validates and derives its entropy") {
  CHECK_THROWS_AS(DistributionSpec::gaussian(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::gaussian(0.0, -1.0), std::invalid_argument);
  const auto g = DistributionSpec::gaussian(0.5, 0.75);
  CHECK(g.second_moment() == doctest::Approx(1.0).epsilon(1e-14));
  // 0.5 * ln(2 pi e v)
  CHECK(g.differential_entropy() ==
        doctest::Approx(0.5 * std::log(2.0 * 3.141592653589793 *
                                       2.718281828459045 * 0.75))
            .epsilon(1e-14));
  CHECK(g.density(0.5) == doctest::Approx(1.0 / std::sqrt(2.0 * 3.141592653589793 * 0.75)));
}

TEST_CASE("discrete spec enforces its invariants") {
  CHECK_THROWS_AS(DistributionSpec::discrete({}), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::discrete({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::discrete({-1.0, 1.0}, {0.5, 0.5001}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::discrete({-1.0, 1.0}, {-0.1, 1.1}),
                  std::invalid_argument);
  const auto d = DistributionSpec::discrete({1.0, 2.0}, {0.3, 0.7});
  CHECK(d.mean() == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(d.variance() == doctest::Approx(0.21).epsilon(1e-12));
  CHECK_FALSE(d.has_density());
  CHECK_THROWS(d.differential_entropy());
  CHECK_THROWS(d.density(1.0));
}

TEST_CASE("discrete sampling hits the declared weights") {
  const auto d = DistributionSpec::discrete({-2.0, 3.0}, {0.25, 0.75});
  Rng rng(5);
  int hi = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    if (d.sample(rng) > 0) ++hi;
  }
  CHECK(std::abs(static_cast<double>(hi) / n - 0.75) < 0.004);
}

TEST_CASE("custom spec validation") {
  auto density = [](double) { return 1.0; };
  auto sampler = [](Rng& r) { return r.uniform01(); };
  CHECK_THROWS_AS(DistributionSpec::custom(0.0, -1.0, 0.0, density, sampler),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::custom(0.0, 1.0, 0.0, nullptr, sampler),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::custom(0.0, 1.0, 0.0, density, sampler, 2.0, 1.0),
                  std::invalid_argument);
  const auto c = DistributionSpec::custom(1.5, 1.0 / 12.0, 0.0, density, sampler,
                                          1.0, 2.0);
  CHECK(c.support_lo() == 1.0);
  CHECK(c.support_hi() == 2.0);
  CHECK(c.differential_entropy() == 0.0);
}

TEST_CASE("sparsity config computes k exactly") {
  const SparsityConfig cfg(0.35, 2000);
  CHECK(cfg.k == 700);
  CHECK(SparsityConfig(0.35, 12).k == 4);
  CHECK(SparsityConfig(0.9999, 10).k == 9);
  CHECK_THROWS_AS(SparsityConfig(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(SparsityConfig(1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(SparsityConfig(0.01, 10), std::invalid_argument);  // k = 0
}
