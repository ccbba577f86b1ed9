#include <doctest.h>

#include <cmath>

#include "hsbmo/smallmat.hpp"
#include "hsbmo/solvent.hpp"

using namespace hsbmo;

namespace {

double quadratic_residual(const EllipticSystem& sys, const double* xi,
                          const std::vector<cplx>& L) {
  const int M = sys.M;
  std::vector<cplx> B2(M * M), B1(M * M), B0(M * M), L2(M * M), T1(M * M), T2(M * M), R(M * M);
  sys.symbol_blocks(xi, B2.data(), B1.data(), B0.data());
  smat::mul(M, L.data(), L.data(), L2.data());
  smat::mul(M, B2.data(), L2.data(), T1.data());
  smat::mul(M, B1.data(), L.data(), T2.data());
  for (int i = 0; i < M * M; ++i) R[i] = T1[i] + cplx(0, 1) * T2[i] - B0[i];
  return smat::frob(M, R.data());
}

}  // namespace

TEST_CASE("laplacian solvent is -|xi|") {
  EllipticSystem sys = make_laplacian(2);
  double xi = 1.0;
  SolventResult r = stable_solvent(sys, &xi);
  CHECK(r.lambda[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(r.lambda[0].imag()) <= 1e-12);

  EllipticSystem sys3 = make_laplacian(3);
  double xi2[2] = {3.0, 4.0};
  SolventResult r2 = stable_solvent(sys3, xi2);
  CHECK(r2.lambda[0].real() == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("xi = 0 is rejected by the solvent construction") {
  EllipticSystem sys = make_laplacian(2);
  double xi = 0.0;
  CHECK_THROWS_AS(stable_solvent(sys, &xi), SolventError);
}

TEST_CASE("Lame solvent: residual oracle and stable spectrum") {
  EllipticSystem sys = make_lame(3, LameParams{1.0, 1.0});
  const double xi[2] = {1.0, 0.0};
  SolventResult r = stable_solvent(sys, xi);
  // The quadratic matrix polynomial annihilates the solvent.
  CHECK(quadratic_residual(sys, xi, r.lambda) <= 1e-10 * 2.0 * sys.coeff_norm);
  CHECK(r.max_re < 0.0);
  // Lame has a defective stable eigenvalue; the Schur route must engage.
  CHECK(r.used_schur);
  // Eigenvalues of the solvent cluster at -|xi|.
  CHECK(r.max_re == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("scalar divA solvent residual at assorted frequencies") {
  for (int n : {2, 3}) {
    EllipticSystem sys = make_scalar_divA(n, default_divA_matrix(n));
    const double xis[3][2] = {{1.0, 0.0}, {-2.5, 1.5}, {40.0, -7.0}};
    for (const auto& xi : xis) {
      SolventResult r = stable_solvent(sys, xi);
      double a2 = xi[0] * xi[0];
      if (n == 3) a2 += xi[1] * xi[1];
      CHECK(r.residual <= 1e-10 * (1.0 + a2) * sys.coeff_norm);
      CHECK(r.max_re < 0.0);
    }
  }
}

TEST_CASE("solvent scales linearly with the frequency") {
  EllipticSystem sys = make_lame(2, LameParams{2.0, 0.5});
  double xi = 0.75;
  SolventResult a = stable_solvent(sys, &xi);
  xi = 1.5;
  SolventResult b = stable_solvent(sys, &xi);
  for (int q = 0; q < 4; ++q)
    CHECK(std::abs(b.lambda[q] - 2.0 * a.lambda[q]) <= 1e-9 * (1.0 + std::abs(b.lambda[q])));
}
