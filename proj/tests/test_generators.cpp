#include <doctest.h>

#include <cmath>

#include "hsbmo/generators.hpp"

using namespace hsbmo;

TEST_CASE("generators are bit-reproducible given (name, params, grid, seed)") {
  BoundaryGrid g = make_grid(2, 32, 0.25);
  for (const auto& name : generator_names()) {
    SampledField a = generate(name, GeneratorParams{}, g, 42);
    SampledField b = generate(name, GeneratorParams{}, g, 42);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
  }
}

TEST_CASE("constant generator fills the requested value") {
  BoundaryGrid g = make_grid(1, 16, 0.5);
  GeneratorParams p;
  p.constant = cplx(3.0, 0.0);
  SampledField f = generate("constant", p, g, 0);
  for (const cplx& v : f.values) CHECK(v == cplx(3.0, 0.0));
}

TEST_CASE("log_abs replaces the singular node by the value at h/2") {
  BoundaryGrid g = make_grid(1, 64, 0.125);
  SampledField f = generate("log_abs", GeneratorParams{}, g, 0);
  CHECK(f.values[32].real() == doctest::Approx(std::log(g.h / 2.0)));
  CHECK(f.values[40].real() == doctest::Approx(std::log(std::abs(g.coord(40)))));
  CHECK(f.finite());
}

TEST_CASE("power_eta rejects eta outside (0,1); unknown generators rejected") {
  BoundaryGrid g = make_grid(1, 16, 0.5);
  GeneratorParams p;
  p.eta = 1.5;
  CHECK_THROWS_AS(generate("power_eta", p, g, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate("sawtooth", GeneratorParams{}, g, 0), std::invalid_argument);
}

TEST_CASE("bump is supported inside half the box") {
  BoundaryGrid g = make_grid(2, 64, 0.125);
  SampledField f = generate("bump", GeneratorParams{}, g, 0);
  const double R = g.half_extent() / 2.0;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const double r = std::sqrt(g.node_abs2(k));
    if (r >= R) CHECK(f.values[k] == cplx(0.0, 0.0));
  }
  CHECK(f.values[g.index(32, 32)].real() == doctest::Approx(1.0));
}

TEST_CASE("indicator splits at h/2 so a level-1 cube straddles it") {
  BoundaryGrid g = make_grid(1, 64, 0.125);
  SampledField f = generate("indicator", GeneratorParams{}, g, 0);
  CHECK(f.values[32] == cplx(1.0, 0.0));   // x = 0 < h/2
  CHECK(f.values[33] == cplx(0.0, 0.0));   // x = h >= h/2
  // The interface sits at an odd node index, so a 2-node dyadic cube sees a
  // symmetric split.
  CHECK(f.values[31] == cplx(1.0, 0.0));
}
