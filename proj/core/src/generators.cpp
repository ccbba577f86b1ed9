#include "hsbmo/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbmo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double radial(const BoundaryGrid& g, std::size_t node) {
  return std::sqrt(g.node_abs2(node));
}

}  // namespace

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {"constant",     "power_eta", "log_abs",
                                                 "bump",         "lacunary_bmo",
                                                 "indicator"};
  return names;
}

SampledField generate(const std::string& name, const GeneratorParams& params,
                      const BoundaryGrid& grid, std::uint64_t seed) {
  const std::size_t NN = grid.node_count();
  const int M = params.components;
  if (M < 1) throw std::invalid_argument("generate: components must be >= 1");
  SampledField f(grid, M);

  auto fill_all = [&](auto&& scalar_of_node) {
    for (std::size_t k = 0; k < NN; ++k) {
      const cplx v = scalar_of_node(k);
      for (int c = 0; c < M; ++c) f.values[k * M + c] = v;
    }
  };

  if (name == "constant") {
    fill_all([&](std::size_t) { return params.constant; });
  } else if (name == "power_eta") {
    const double eta = params.eta;
    if (!(eta > 0.0 && eta < 1.0))
      throw std::invalid_argument("generate: power_eta needs eta in (0,1)");
    fill_all([&](std::size_t k) { return cplx(std::pow(radial(grid, k), eta), 0.0); });
  } else if (name == "log_abs") {
    // The singular node x' = 0 takes the value at distance h/2.
    const double floor_val = std::log(grid.h / 2.0);
    fill_all([&](std::size_t k) {
      const double r = radial(grid, k);
      return cplx(r == 0.0 ? floor_val : std::log(r), 0.0);
    });
  } else if (name == "bump") {
    const double R = params.radius > 0.0 ? params.radius : grid.half_extent() / 2.0;
    fill_all([&](std::size_t k) {
      const double r2 = grid.node_abs2(k) / (R * R);
      if (r2 >= 1.0) return cplx(0.0, 0.0);
      return cplx(std::exp(1.0 - 1.0 / (1.0 - r2)), 0.0);
    });
  } else if (name == "lacunary_bmo") {
    // Multi-scale lacunary cosine sum with seeded phases; BMO norm is positive
    // and the dyadic scales line up with the grid.
    const int kmax = int_log2(grid.N) - 3;
    SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<double> phase(kmax + 1, 0.0), amp(kmax + 1, 0.0);
    for (int k = 2; k <= kmax; ++k) {
      phase[k] = rng.uniform() * kTwoPi;
      amp[k] = 1.0 / std::sqrt(static_cast<double>(k - 1));
    }
    const double period = 2.0 * grid.half_extent();
    fill_all([&](std::size_t node) {
      double coords[2] = {0.0, 0.0};
      grid.node_coords(node, coords);
      double s = 0.0;
      for (int k = 2; k <= kmax; ++k)
        s += amp[k] * std::cos(kTwoPi * (1 << k) * coords[0] / period + phase[k]);
      return cplx(s, 0.0);
    });
  } else if (name == "indicator") {
    const double x0 = params.cutoff != 0.0 ? params.cutoff : grid.h / 2.0;
    fill_all([&](std::size_t node) {
      double coords[2] = {0.0, 0.0};
      grid.node_coords(node, coords);
      return cplx(coords[0] < x0 ? 1.0 : 0.0, 0.0);
    });
  } else {
    throw std::invalid_argument("generate: unknown generator '" + name + "'");
  }
  return f;
}

}  // namespace hsbmo
