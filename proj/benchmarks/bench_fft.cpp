#include <benchmark/benchmark.h>

#include "hsbmo/fft.hpp"
#include "hsbmo/generators.hpp"

using namespace hsbmo;

static void BM_SpectralRoundTrip1d(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  BoundaryGrid g = make_grid(1, N, 1.0 / 64.0);
  SpectralTransform st(g);
  SplitMix64 rng(1);
  std::vector<cplx> f(N), spec(N), back(N);
  for (auto& v : f) v = cplx(rng.symmetric(), rng.symmetric());
  for (auto _ : state) {
    st.to_spectral(f.data(), spec.data());
    st.to_physical(spec.data(), back.data());
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_SpectralRoundTrip1d)->Arg(1024)->Arg(4096);

static void BM_SpectralRoundTrip2d(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  BoundaryGrid g = make_grid(2, N, 1.0 / 16.0);
  SpectralTransform st(g);
  SplitMix64 rng(2);
  const std::size_t NN = g.node_count();
  std::vector<cplx> f(NN), spec(NN), back(NN);
  for (auto& v : f) v = cplx(rng.symmetric(), rng.symmetric());
  for (auto _ : state) {
    st.to_spectral(f.data(), spec.data());
    st.to_physical(spec.data(), back.data());
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(state.iterations() * NN);
}
BENCHMARK(BM_SpectralRoundTrip2d)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
