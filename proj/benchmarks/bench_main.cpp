#include <benchmark/benchmark.h>

#include "srd/bounds.hpp"
#include "srd/free_probability.hpp"
#include "srd/hypothesis.hpp"
#include "srd/random_matrix.hpp"
#include "srd/simulation.hpp"

using namespace srd;

namespace {

const DistributionSpec kStdGauss = DistributionSpec::gaussian(0.0, 1.0);

void BM_bayes_error_gaussian(benchmark::State& state) {
  const MixtureModel model(0.3, 0.35, kStdGauss);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bayes_error(model));
  }
}
BENCHMARK(BM_bayes_error_gaussian);

void BM_bayes_error_discrete(benchmark::State& state) {
  const MixtureModel model(0.3, 0.35, DistributionSpec::discrete({-1.0, 1.0}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bayes_error(model));
  }
}
BENCHMARK(BM_bayes_error_discrete);

void BM_lower_bound_rate(benchmark::State& state) {
  const auto f = unit_power_gaussian(0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_bound_rate(0.3, 0.35, f));
  }
}
BENCHMARK(BM_lower_bound_rate);

void BM_upper_bound_rate(benchmark::State& state) {
  const auto f = unit_power_gaussian(0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(upper_bound_rate(0.95, 0.35, f));
  }
}
BENCHMARK(BM_upper_bound_rate);

void BM_mp_log_potential(benchmark::State& state) {
  const SpectralMeasure mu = mp_law(0.35);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_potential(mu));
  }
}
BENCHMARK(BM_mp_log_potential);

void BM_r_transform(benchmark::State& state) {
  const SpectralMeasure mu_tilde = add_zero_atom(mp_law(0.2), 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(r_transform(mu_tilde, 0.1));
  }
}
BENCHMARK(BM_r_transform);

void BM_projected_spectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_projected_spectrum(n, 0.2, 0.5, seed++));
  }
}
BENCHMARK(BM_projected_spectrum)->Arg(200)->Arg(500);

void BM_thresholding_trial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparsityConfig cfg(0.35, n);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_experiment(cfg, kStdGauss, 0.3, 0.3, 1, seed++));
  }
}
BENCHMARK(BM_thresholding_trial)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
