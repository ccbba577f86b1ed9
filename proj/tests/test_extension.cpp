#include <doctest.h>

#include <cmath>

#include "hsbmo/extension.hpp"
#include "hsbmo/generators.hpp"

using namespace hsbmo;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

HalfSpaceField extend_simple(const SampledField& f, const PoissonPropagator& prop,
                             std::vector<double> levels, bool grad = false) {
  ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = std::move(levels);
  req.with_gradient = grad;
  return extend(req);
}

}  // namespace

TEST_CASE("constants extend to constants at every level") {
  BoundaryGrid g = make_grid(1, 128, 0.125);
  EllipticSystem sys = make_lame(2, LameParams{1.0, 0.5});
  PoissonPropagator prop(sys, g);
  GeneratorParams p;
  p.components = 2;
  SampledField f = generate("constant", p, g, 0);
  HalfSpaceField u = extend_simple(f, prop, {0.1, 0.5, 2.0});
  for (const auto& level : u.values)
    for (const cplx& v : level) CHECK(std::abs(v - cplx(3.0, 0.0)) <= 1e-11);
}

TEST_CASE("single-frequency data obeys the exact scalar eigenrelation") {
  BoundaryGrid g = make_grid(1, 256, 1.0 / 16.0);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  const double S = g.half_extent();
  const double omega = 2.0 * kPi * 5.0 / (2.0 * S);
  SampledField f(g, 1);
  for (int k = 0; k < g.N; ++k) f.values[k] = cplx(std::cos(omega * g.coord(k)), 0.0);
  HalfSpaceField u = extend_simple(f, prop, {0.3, 1.0});
  for (std::size_t lev = 0; lev < u.t_levels.size(); ++lev) {
    const double decay = std::exp(-u.t_levels[lev] * std::abs(omega));
    for (int k = 0; k < g.N; ++k) {
      const double want = decay * std::cos(omega * g.coord(k));
      CHECK(std::abs(u.values[lev][k] - cplx(want, 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("grid mean is preserved at every level") {
  BoundaryGrid g = make_grid(2, 32, 0.25);
  EllipticSystem sys = make_scalar_divA(3, default_divA_matrix(3));
  PoissonPropagator prop(sys, g);
  SampledField f = generate("lacunary_bmo", GeneratorParams{}, g, 9);
  HalfSpaceField u = extend_simple(f, prop, {0.2, 0.9});
  cplx want(0, 0);
  for (const auto& v : f.values) want += v;
  for (const auto& level : u.values) {
    cplx got(0, 0);
    for (const auto& v : level) got += v;
    CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("extension commutes with lattice translations") {
  BoundaryGrid g = make_grid(1, 128, 0.125);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  SampledField f = generate("bump", GeneratorParams{}, g, 0);
  SampledField fz = translate(f, 17);
  HalfSpaceField a = extend_simple(fz, prop, {0.4});
  HalfSpaceField b = extend_simple(f, prop, {0.4});
  for (int k = 0; k < g.N; ++k) {
    const cplx want = b.values[0][(k + 17) % g.N];
    CHECK(std::abs(a.values[0][k] - want) <= 1e-11);
  }
}

TEST_CASE("vertical derivative channel matches a centered difference") {
  BoundaryGrid g = make_grid(1, 256, 1.0 / 16.0);
  EllipticSystem sys = make_lame(2, LameParams{1.0, 1.0});
  PoissonPropagator prop(sys, g);
  GeneratorParams p;
  p.components = 2;
  SampledField f = generate("bump", p, g, 5);
  const double t = 0.5;
  HalfSpaceField u = extend_simple(f, prop, {t}, /*grad=*/true);

  auto fd_error = [&](double delta) {
    HalfSpaceField up = extend_simple(f, prop, {t + delta});
    HalfSpaceField um = extend_simple(f, prop, {t - delta});
    double worst = 0.0, scale = 0.0;
    const std::size_t NN = g.node_count();
    for (std::size_t k = 0; k < NN; ++k)
      for (int c = 0; c < 2; ++c) {
        const cplx fd = (up.values[0][k * 2 + c] - um.values[0][k * 2 + c]) / (2.0 * delta);
        const cplx an = u.grad[0][(static_cast<std::size_t>(g.d) * NN + k) * 2 + c];
        worst = std::max(worst, std::abs(fd - an));
        scale = std::max(scale, std::abs(an));
      }
    return worst / scale;
  };
  const double e1 = fd_error(0.02);
  const double e2 = fd_error(0.01);
  CHECK(e1 <= 1e-2);
  CHECK(e2 <= e1 / 3.2);  // O(delta^2)
}

TEST_CASE("horizontal gradient channel is the i xi multiplier") {
  BoundaryGrid g = make_grid(1, 128, 0.125);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  const double S = g.half_extent();
  const double omega = 2.0 * kPi * 3.0 / (2.0 * S);
  SampledField f(g, 1);
  for (int k = 0; k < g.N; ++k) f.values[k] = cplx(std::sin(omega * g.coord(k)), 0.0);
  HalfSpaceField u = extend_simple(f, prop, {0.7}, true);
  const double decay = std::exp(-0.7 * omega);
  for (int k = 0; k < g.N; ++k) {
    const double want = decay * omega * std::cos(omega * g.coord(k));
    CHECK(std::abs(u.grad[0][k] - cplx(want, 0.0)) <= 1e-10);
  }
}

TEST_CASE("vertical shift: eps = 0 is the identity, constants stay put") {
  BoundaryGrid g = make_grid(1, 64, 0.25);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  SampledField f = generate("bump", GeneratorParams{}, g, 2);
  ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = {0.25, 1.0};
  HalfSpaceField u0 = extend(req);
  HalfSpaceField us = vertical_shift(req, 0.0);
  for (std::size_t lev = 0; lev < u0.t_levels.size(); ++lev)
    for (std::size_t i = 0; i < u0.values[lev].size(); ++i)
      CHECK(std::abs(u0.values[lev][i] - us.values[lev][i]) <= 1e-13);

  HalfSpaceField lifted = vertical_shift(req, 0.5);
  HalfSpaceField direct = extend_simple(f, prop, {0.75, 1.5});
  for (std::size_t lev = 0; lev < lifted.t_levels.size(); ++lev)
    for (std::size_t i = 0; i < lifted.values[lev].size(); ++i)
      CHECK(std::abs(lifted.values[lev][i] - direct.values[lev][i]) <= 1e-12);
}

TEST_CASE("nontangential trace: constants have zero diagnostic") {
  BoundaryGrid g = make_grid(1, 128, 0.125);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  SampledField f = generate("constant", GeneratorParams{}, g, 0);
  HalfSpaceField u = extend_simple(f, prop, TLadder{g.h / 2, 1.4, 2.0}.levels());
  TraceResult tr = nontangential_trace(u, 1.0);
  CHECK(tr.diagnostic_sup <= 1e-11);
}

TEST_CASE("nontangential trace diagnostic shrinks like t_min for smooth data") {
  BoundaryGrid g = make_grid(1, 512, 1.0 / 32.0);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  SampledField f = generate("bump", GeneratorParams{}, g, 0);
  auto diag_at = [&](double tmin) {
    HalfSpaceField u = extend_simple(f, prop, TLadder{tmin, 1.3, 20 * tmin}.levels());
    return nontangential_trace(u, 1.0).diagnostic_sup;
  };
  // Keep the cone inside the 32-point sampling cap so the scaling is visible.
  const double d1 = diag_at(2.0 * g.h);
  const double d2 = diag_at(g.h);
  CHECK(d2 <= 0.7 * d1);  // roughly O(t_min) for Lipschitz data
}

TEST_CASE("nontangential trace rejects ladders that start too high") {
  BoundaryGrid g = make_grid(1, 64, 0.25);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  SampledField f = generate("bump", GeneratorParams{}, g, 0);
  HalfSpaceField u = extend_simple(f, prop, {2.0, 4.0});
  CHECK_THROWS_AS(nontangential_trace(u, 1.0), std::invalid_argument);
}

TEST_CASE("Holder data: trace diagnostic scales like t^eta") {
  BoundaryGrid g = make_grid(1, 1024, 1.0 / 64.0);
  EllipticSystem sys = make_laplacian(2);
  PoissonPropagator prop(sys, g);
  GeneratorParams p;
  p.eta = 0.5;
  SampledField f = generate("power_eta", p, g, 0);
  auto diag_at = [&](double tmin) {
    HalfSpaceField u = extend_simple(f, prop, TLadder{tmin, 1.3, 16 * tmin}.levels());
    return nontangential_trace(u, 1.0).diagnostic_sup;
  };
  const double d1 = diag_at(4.0 * g.h);
  const double d2 = diag_at(g.h);
  // Fitted rate of the sup diagnostic across a factor-4 refinement.
  const double rate = std::log(d1 / d2) / std::log(4.0);
  CHECK(rate >= 0.3);
  CHECK(rate <= 0.75);
}

TEST_CASE("folded gradient-squared mode matches the channel route") {
  BoundaryGrid g = make_grid(2, 32, 0.25);
  EllipticSystem sys = make_lame(3, LameParams{1.0, 1.0});
  PoissonPropagator prop(sys, g);
  GeneratorParams p;
  p.components = 3;
  SampledField f = generate("lacunary_bmo", p, g, 3);
  ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = {0.25, 0.9};
  req.with_gradient = true;
  HalfSpaceField full = extend(req);
  req.with_gradient = false;
  req.gradient_squared_only = true;
  req.keep_values = false;
  HalfSpaceField lean = extend(req);
  REQUIRE(lean.has_gradient());
  for (std::size_t lev = 0; lev < full.t_levels.size(); ++lev)
    for (std::size_t k = 0; k < g.node_count(); k += 7) {
      CHECK(lean.grad_sq(lev, k) ==
            doctest::Approx(full.grad_sq(lev, k)).epsilon(1e-12));
    }
  CHECK(lean.values[0].empty());
}

TEST_CASE("request validation catches mismatches") {
  BoundaryGrid g = make_grid(1, 64, 0.25);
  EllipticSystem sys = make_lame(2, LameParams{1.0, 1.0});
  PoissonPropagator prop(sys, g);
  SampledField f = generate("bump", GeneratorParams{}, g, 0);  // M = 1 vs system M = 2
  ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = {0.5};
  CHECK_THROWS_AS(extend(req), std::invalid_argument);
}
