#include <doctest.h>

#include "hsbmo/systems.hpp"

using namespace hsbmo;

TEST_CASE("laplacian has unit ellipticity margin") {
  for (int n : {2, 3}) {
    EllipticSystem sys = make_laplacian(n);
    CHECK(sys.M == 1);
    CHECK(sys.kappa_o == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("Lame moduli conditions decide acceptance") {
  LameParams ok{1.0, 1.0};
  EllipticSystem sys = make_lame(3, ok);
  CHECK(sys.M == 3);
  // Margin is min(mu, 2 mu + lambda); eta parallel to xi realizes the latter.
  CHECK(sys.kappa_o == doctest::Approx(1.0).epsilon(1e-6));

  LameParams bad{1.0, -3.0};  // 2 mu + lambda = -1 < 0
  CHECK_THROWS_AS(make_lame(3, bad), EllipticityError);
  LameParams bad2{-0.5, 3.0};
  CHECK_THROWS_AS(make_lame(3, bad2), EllipticityError);
}

TEST_CASE("scalar divA validates the matrix by sampling") {
  EllipticSystem sys = make_scalar_divA(2, default_divA_matrix(2));
  CHECK(sys.kappa_o > 0.0);
  // Strongly indefinite real part must be rejected.
  std::vector<cplx> bad = {cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(-2.0, 0.0)};
  CHECK_THROWS_AS(make_scalar_divA(2, bad), EllipticityError);
}

TEST_CASE("symbol blocks of the Lame system have the expected structure") {
  LameParams p{1.0, 1.0};
  EllipticSystem sys = make_lame(3, p);
  const double xi[2] = {1.0, 0.0};
  std::vector<cplx> B2(9), B1(9), B0(9);
  sys.symbol_blocks(xi, B2.data(), B1.data(), B0.data());
  // B2 = diag(mu, mu, 2 mu + lambda)
  CHECK(B2[0].real() == doctest::Approx(1.0));
  CHECK(B2[4].real() == doctest::Approx(1.0));
  CHECK(B2[8].real() == doctest::Approx(3.0));
  CHECK(std::abs(B2[1]) == doctest::Approx(0.0));
  // B1 couples the xi_1 and vertical components with lambda + mu.
  CHECK(B1[2].real() == doctest::Approx(2.0));  // (1,3) entry
  CHECK(B1[6].real() == doctest::Approx(2.0));  // (3,1) entry
  CHECK(std::abs(B1[4]) == doctest::Approx(0.0));
  // B0 = mu |xi|^2 I + (lambda+mu) xi xi^T on the horizontal block.
  CHECK(B0[0].real() == doctest::Approx(3.0));
  CHECK(B0[4].real() == doctest::Approx(1.0));
  CHECK(B0[8].real() == doctest::Approx(1.0));
}

TEST_CASE("named_system dispatch and tensor passthrough") {
  SystemSpec spec;
  spec.name = "scalar_divA";
  EllipticSystem sys = named_system(spec, 3);
  CHECK(sys.M == 1);
  CHECK_THROWS_AS(
      [&] {
        SystemSpec bad;
        bad.name = "biharmonic";
        named_system(bad, 2);
      }(),
      std::invalid_argument);

  EllipticSystem lap = make_laplacian(2);
  EllipticSystem copy = make_system_from_tensor(2, 1, lap.coeff, "copy");
  CHECK(copy.kappa_o == doctest::Approx(lap.kappa_o));
}
