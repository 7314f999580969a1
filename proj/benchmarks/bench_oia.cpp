#include <benchmark/benchmark.h>

#include "oia/asymptotics.hpp"
#include "oia/link.hpp"

using namespace oia;

static void BM_DrawChannel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_channel(rng, n, n));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DrawChannel)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_Waterfill(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rng(2, 0);
  const RealVector eigs = gram_channel_eigenvalues(draw_channel(rng, n, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(waterfill(eigs, 1.0, n * 10.0));
  }
}
BENCHMARK(BM_Waterfill)->RangeMultiplier(2)->Range(4, 256);

static void BM_SortedSvd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rng(3, 0);
  const ComplexMatrix h = draw_channel(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorted_svd(h));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortedSvd)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_SimulateTrial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinkConfig config{Dimensions(n, n, n, n), PowerNoiseConfig::from_snr_db(10, 10)};
  RandomStream rng(4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_trial(config, rng));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimulateTrial)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_StieltjesFixedPoint(benchmark::State& state) {
  const auto dist = LimitingPowerDistribution::from_atoms({{1.0, 0.5}, {3.0, 0.5}});
  double z = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gm1(z, dist, 1.0));
    z = (z < -10.0) ? -1.0 : z - 0.1;
  }
}
BENCHMARK(BM_StieltjesFixedPoint);

static void BM_AsymptoticUpaRate(benchmark::State& state) {
  const AsymptoticModel model =
      AsymptoticModel::solve(1.0, 1.0, 1.0, 1.0, PowerNoiseConfig::from_snr_db(10, 10));
  for (auto _ : state) {
    benchmark::DoNotOptimize(asymptotic_upa_rate(model));
  }
}
BENCHMARK(BM_AsymptoticUpaRate);

BENCHMARK_MAIN();
