#include <doctest.h>

#include <cmath>

#include "hsbmo/field.hpp"
#include "hsbmo/generators.hpp"

using namespace hsbmo;

TEST_CASE("make_grid accepts the documented shapes") {
  BoundaryGrid g1 = make_grid(1, 1024, 1.0 / 64.0);
  CHECK(g1.half_extent() == doctest::Approx(8.0));
  BoundaryGrid g2 = make_grid(2, 256, 1.0 / 32.0);
  CHECK(g2.half_extent() == doctest::Approx(4.0));
  CHECK(g2.node_count() == 256u * 256u);
}

TEST_CASE("make_grid rejects bad parameters") {
  CHECK_THROWS_AS(make_grid(1, 100, 0.1), std::invalid_argument);  // not a power of two
  CHECK_THROWS_AS(make_grid(3, 64, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 4, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 64, 0.0), std::invalid_argument);
}

TEST_CASE("grid coordinates put zero on the grid") {
  BoundaryGrid g = make_grid(1, 16, 0.5);
  CHECK(g.coord(8) == 0.0);
  CHECK(g.coord(0) == -4.0);
  CHECK(g.coord(15) == doctest::Approx(3.5));
}

TEST_CASE("cube_statistics: constant field has zero oscillation") {
  BoundaryGrid g = make_grid(1, 64, 0.125);
  GeneratorParams p;
  SampledField f = generate("constant", p, g, 1);
  Cube Q{3, 2, 0};
  CubeStatistics st = cube_statistics(f, Q, 1.0);
  CHECK(st.oscillation == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(st.mean[0].real() == doctest::Approx(3.0));
}

TEST_CASE("cube_statistics: symmetric two-value split oscillates by 1/2") {
  BoundaryGrid g = make_grid(1, 64, 0.125);
  SampledField f(g, 1);
  // Straddling cube at level 1 covering nodes {31, 32}: values 1, 0.
  for (int k = 0; k < 64; ++k) f.values[k] = cplx(k < 32 ? 1.0 : 0.0, 0.0);
  Cube Q{1, 15, 0};  // nodes 30,31 -> both 1, oscillation 0
  CHECK(cube_statistics(f, Q, 1.0).oscillation == doctest::Approx(0.0));
  Cube Qs{4, 0, 0};  // nodes 0..15 all ones
  CHECK(cube_statistics(f, Qs, 1.0).oscillation == doctest::Approx(0.0));
  Cube Qw{4, 2, 0};  // nodes 32..47 all zeros
  CHECK(cube_statistics(f, Qw, 1.0).oscillation == doctest::Approx(0.0));
  Cube Qb{5, 0, 0};  // nodes 0..31 straddle in half: 16 ones, 16 zeros
  for (int k = 0; k < 64; ++k) f.values[k] = cplx(k < 16 ? 1.0 : 0.0, 0.0);
  CHECK(cube_statistics(f, Qb, 1.0).oscillation == doctest::Approx(0.5));
  Cube Qtoobig{6, 0, 0};  // side 64 > S: outside the family
  CHECK_THROWS_AS(cube_statistics(f, Qtoobig, 1.0), std::invalid_argument);
}

TEST_CASE("cube_statistics: |x|^(1/2) mean matches direct summation") {
  BoundaryGrid g = make_grid(1, 256, 1.0 / 16.0);
  GeneratorParams p;
  p.eta = 0.5;
  SampledField f = generate("power_eta", p, g, 1);
  // Q = nodes [128, 144): x in [0,1).
  Cube Q{4, 8, 0};
  CubeStatistics st = cube_statistics(f, Q, 1.0);
  double mean = 0.0;
  for (int k = 128; k < 144; ++k) mean += std::sqrt(std::abs(g.coord(k)));
  mean /= 16.0;
  double osc = 0.0;
  for (int k = 128; k < 144; ++k) osc += std::abs(std::sqrt(std::abs(g.coord(k))) - mean);
  osc /= 16.0;
  CHECK(st.mean[0].real() == doctest::Approx(mean).epsilon(1e-13));
  CHECK(st.oscillation == doctest::Approx(osc).epsilon(1e-13));
}

TEST_CASE("oscillation monotonicity under cube inclusion") {
  // osc(Q') <= 2 (l(Q)/l(Q'))^{(n-1)/p} osc(Q) for Q' inside Q.
  BoundaryGrid g = make_grid(2, 32, 0.25);
  SampledField f = generate("lacunary_bmo", GeneratorParams{}, g, 7);
  for (double p : {1.0, 2.0}) {
    Cube Q{4, 0, 0};
    const double big = cube_statistics(f, Q, p).oscillation;
    for (int j0 = 0; j0 < 2; ++j0)
      for (int j1 = 0; j1 < 2; ++j1) {
        Cube Qp{3, j0, j1};
        const double small = cube_statistics(f, Qp, p).oscillation;
        CHECK(small <= 2.0 * std::pow(2.0, (g.d) / p) * big + 1e-12);
      }
  }
}

TEST_CASE("translate wraps the lattice exactly") {
  BoundaryGrid g = make_grid(1, 32, 0.5);
  SampledField f = generate("lacunary_bmo", GeneratorParams{}, g, 3);
  SampledField t = translate(f, 5);
  for (int k = 0; k < 32; ++k) CHECK(t.values[k] == f.values[(k + 5) % 32]);
  SampledField back = translate(t, -5);
  for (int k = 0; k < 32; ++k) CHECK(back.values[k] == f.values[k]);
}

TEST_CASE("translate leaves constants alone") {
  BoundaryGrid g = make_grid(2, 16, 0.5);
  SampledField f = generate("constant", GeneratorParams{}, g, 1);
  SampledField t = translate(f, 3, 7);
  for (std::size_t k = 0; k < g.node_count(); ++k) CHECK(t.values[k] == f.values[k]);
}

TEST_CASE("dilate strides the lattice and rejects oversized factors") {
  BoundaryGrid g = make_grid(1, 64, 0.25);
  GeneratorParams p;
  p.eta = 0.5;
  SampledField f = generate("power_eta", p, g, 1);
  SampledField d2 = dilate(f, 2);
  // (delta_2 f)(x_k) = f(2 x_k) where 2 x_k stays on the lattice.
  for (int k = 16; k < 48; ++k) {
    const double want = std::sqrt(std::abs(2.0 * g.coord(k)));
    CHECK(d2.values[k].real() == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK_THROWS_AS(dilate(f, 16), std::invalid_argument);
  CHECK_THROWS_AS(dilate(f, 3), std::invalid_argument);
}
