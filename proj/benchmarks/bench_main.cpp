#include <benchmark/benchmark.h>

#include "nullwave/noise.hpp"
#include "nullwave/solver.hpp"

namespace {

nullwave::GridSpec grid_of(int n) { return {{0.0, 0.0}, n, 1.0 / 1024}; }

void BM_NoiseSample(benchmark::State& state) {
  const auto g = grid_of(static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(nullwave::NoiseField::sample(g, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_NoiseSample)->Arg(256)->Arg(1280);

void BM_SolveLinear(benchmark::State& state) {
  const auto noise = nullwave::NoiseField::sample(grid_of(static_cast<int>(state.range(0))), 7);
  for (auto _ : state) benchmark::DoNotOptimize(nullwave::solve_linear(noise));
}
BENCHMARK(BM_SolveLinear)->Arg(256)->Arg(1280);

void BM_SolveMarchingTanh(benchmark::State& state) {
  const auto noise = nullwave::NoiseField::sample(grid_of(static_cast<int>(state.range(0))), 7);
  const nullwave::InitialData data{nullwave::ScalarPreset::constant(1.0), nullwave::ScalarPreset::zero()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(nullwave::solve_marching(noise, data, nullwave::Nonlinearity::tanh()));
  }
}
BENCHMARK(BM_SolveMarchingTanh)->Arg(256)->Arg(1280);

void BM_SolvePicard(benchmark::State& state) {
  const auto noise = nullwave::NoiseField::sample(grid_of(64), 7);
  const nullwave::InitialData data{nullwave::ScalarPreset::constant(1.0), nullwave::ScalarPreset::zero()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        nullwave::solve_picard(noise, data, nullwave::Nonlinearity::tanh(), 30));
  }
}
BENCHMARK(BM_SolvePicard);

}  // namespace

BENCHMARK_MAIN();
