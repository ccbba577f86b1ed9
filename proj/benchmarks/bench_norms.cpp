#include <benchmark/benchmark.h>

#include "hsbmo/generators.hpp"
#include "hsbmo/seminorms.hpp"

using namespace hsbmo;

static void BM_BmoSweep(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  BoundaryGrid g = make_grid(1, N, 16.0 / N);
  SampledField f = generate("log_abs", GeneratorParams{}, g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bmo_norm(f, 1.0));
  state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_BmoSweep)->Arg(2048)->Arg(8192);

static void BM_BmoSweep2d(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  BoundaryGrid g = make_grid(2, N, 8.0 / N);
  SampledField f = generate("log_abs", GeneratorParams{}, g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bmo_norm(f, 1.0));
  state.SetItemsProcessed(state.iterations() * g.node_count());
}
BENCHMARK(BM_BmoSweep2d)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_HolderSweep2d(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  BoundaryGrid g = make_grid(2, N, 8.0 / N);
  SampledField f = generate("power_eta", GeneratorParams{}, g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(f, 0.5));
  state.SetItemsProcessed(state.iterations() * g.node_count());
}
BENCHMARK(BM_HolderSweep2d)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
