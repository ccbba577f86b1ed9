#include <benchmark/benchmark.h>

#include "hsbmo/extension.hpp"
#include "hsbmo/generators.hpp"

using namespace hsbmo;

static void BM_PropagatorBuildLame(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  BoundaryGrid g = make_grid(1, N, 16.0 / N);
  EllipticSystem sys = make_lame(2, LameParams{1.0, 1.0});
  for (auto _ : state) {
    PoissonPropagator prop(sys, g);
    benchmark::DoNotOptimize(prop.residual_max());
  }
  state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_PropagatorBuildLame)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_MatrixExp3x3(benchmark::State& state) {
  BoundaryGrid g = make_grid(2, 16, 0.25);
  EllipticSystem sys = make_lame(3, LameParams{1.0, 1.0});
  PoissonPropagator prop(sys, g);
  MatExpWork w;
  std::vector<cplx> E(9);
  std::size_t j = 1;
  for (auto _ : state) {
    prop.propagator_at(j, 0.7, E.data(), w);
    benchmark::DoNotOptimize(E.data());
    j = (j % (g.node_count() - 1)) + 1;
  }
}
BENCHMARK(BM_MatrixExp3x3);

static void BM_ExtendWithGradient(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  BoundaryGrid g = make_grid(1, N, 16.0 / N);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  SampledField f = generate("log_abs", GeneratorParams{}, g, 1);
  ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = TLadder{g.h / 2, std::pow(2.0, 0.25), g.half_extent()}.levels();
  req.with_gradient = true;
  for (auto _ : state) {
    HalfSpaceField u = extend(req);
    benchmark::DoNotOptimize(u.values.back().data());
  }
  state.SetItemsProcessed(state.iterations() * N * req.t_levels.size());
}
BENCHMARK(BM_ExtendWithGradient)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
