#include <benchmark/benchmark.h>

#include "ecsim/ecp.hpp"
#include "ecsim/locc.hpp"
#include "ecsim/montecarlo.hpp"
#include "ecsim/rng.hpp"

namespace {

using namespace ecsim;

void BM_RoundStatevector(benchmark::State& state) {
  const int photons = static_cast<int>(state.range(0));
  const SchmidtCoefficients c = SchmidtCoefficients::from_alpha_sq(0.2);
  const PureState input = ghz_state(photons, c);
  const ProbeModel model{};
  CounterRng rng(7, 0);
  for (auto _ : state) {
    RoundResult r = round_statevector(input, 0, c, model, rng);
    benchmark::DoNotOptimize(r.post_state);
  }
}
BENCHMARK(BM_RoundStatevector)->Arg(2)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_PcdProbabilities(benchmark::State& state) {
  const int photons = static_cast<int>(state.range(0));
  const PureState input = ghz_state(photons, SchmidtCoefficients(1.0, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcd_probabilities(input, 0, photons - 1));
  }
}
BENCHMARK(BM_PcdProbabilities)->Arg(4)->Arg(10)->Arg(16);

void BM_RecursionGrid(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double sum = 0.0;
    for (int i = 1; i <= 99; ++i) {
      sum += total_success_probability(
          SchmidtCoefficients::from_alpha_sq(i / 100.0), rounds);
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_RecursionGrid)->Arg(6)->Arg(10);

void BM_SeriesGrid(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double sum = 0.0;
    for (int i = 1; i <= 99; ++i) {
      sum += success_probability_series(
          SchmidtCoefficients::from_alpha_sq(i / 100.0), rounds);
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_SeriesGrid)->Arg(6)->Arg(10);

void BM_EstimateSuccess(benchmark::State& state) {
  const SchmidtCoefficients c = SchmidtCoefficients::from_alpha_sq(0.2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_success(c, 2, 2000, ++seed));
  }
}
BENCHMARK(BM_EstimateSuccess);

void BM_EnumerateSuccess(benchmark::State& state) {
  const SchmidtCoefficients c = SchmidtCoefficients::from_alpha_sq(0.2);
  const int rounds = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_success(c, rounds));
  }
}
BENCHMARK(BM_EnumerateSuccess)->Arg(4)->Arg(8);

void BM_LoccRun(benchmark::State& state) {
  locc::RunConfig config;
  config.n_parties = static_cast<int>(state.range(0));
  config.coefficients = SchmidtCoefficients::from_alpha_sq(0.2);
  config.max_rounds = 6;
  for (auto _ : state) {
    ++config.seed;
    benchmark::DoNotOptimize(locc::run_protocol(config));
  }
}
BENCHMARK(BM_LoccRun)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
