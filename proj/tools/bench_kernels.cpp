// Compares the OpenMP kernels against their serial reference
// implementations: the G_b surface grid and the Monte Carlo sampler.

#include <benchmark/benchmark.h>

#include "qgamble/equilibrium.hpp"
#include "qgamble/payoff.hpp"

namespace {

using namespace qgamble;

const GameConfig kConfig(8.0 / 9.0, 1.0);
const Strategy kNash(1.0 / 3.0, 0.25);

void BM_SurfaceSerial(benchmark::State& state) {
  const auto grid = uniform_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto table = surface_serial(kConfig, grid, grid);
    benchmark::DoNotOptimize(table.gb.data());
  }
}

void BM_SurfaceParallel(benchmark::State& state) {
  const auto grid = uniform_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto table = surface(kConfig, grid, grid);
    benchmark::DoNotOptimize(table.gb.data());
  }
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto summary = monte_carlo_serial(kNash, kConfig, n, 42);
    benchmark::DoNotOptimize(summary.mean);
  }
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto summary = monte_carlo(kNash, kConfig, n, 42);
    benchmark::DoNotOptimize(summary.mean);
  }
}

}  // namespace

BENCHMARK(BM_SurfaceSerial)->Arg(101)->Arg(501);
BENCHMARK(BM_SurfaceParallel)->Arg(101)->Arg(501);
BENCHMARK(BM_MonteCarloSerial)->Arg(1 << 20)->Arg(1 << 24);
BENCHMARK(BM_MonteCarloParallel)->Arg(1 << 20)->Arg(1 << 24);

BENCHMARK_MAIN();
