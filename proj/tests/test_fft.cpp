#include <doctest.h>

#include <cmath>

#include "hsbmo/fft.hpp"
#include "hsbmo/generators.hpp"

using namespace hsbmo;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("to_spectral matches the naive DFT on a small grid") {
  BoundaryGrid g = make_grid(1, 16, 0.5);
  SpectralTransform st(g);
  SplitMix64 rng(11);
  std::vector<cplx> f(16), spec(16);
  for (auto& v : f) v = cplx(rng.symmetric(), rng.symmetric());
  st.to_spectral(f.data(), spec.data());
  for (int j = 0; j < 16; ++j) {
    cplx want(0, 0);
    const double xi = st.freq(j);
    for (int k = 0; k < 16; ++k)
      want += f[k] * std::exp(cplx(0.0, -xi * g.coord(k)));
    want *= g.h;
    CHECK(std::abs(spec[j] - want) <= 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("spectral round trip is exact to rounding (1d and 2d)") {
  for (int d : {1, 2}) {
    BoundaryGrid g = make_grid(d, 32, 0.25);
    SpectralTransform st(g);
    SplitMix64 rng(5 + d);
    const std::size_t NN = g.node_count();
    std::vector<cplx> f(NN), spec(NN), back(NN);
    for (auto& v : f) v = cplx(rng.symmetric(), rng.symmetric());
    st.to_spectral(f.data(), spec.data());
    st.to_physical(spec.data(), back.data());
    for (std::size_t k = 0; k < NN; ++k) CHECK(std::abs(back[k] - f[k]) <= 1e-12);
  }
}

TEST_CASE("frequency layout follows the signed fftfreq convention") {
  BoundaryGrid g = make_grid(1, 8, 1.0);
  SpectralTransform st(g);
  const double dxi = 2.0 * kPi / 8.0;
  CHECK(st.freq(0) == 0.0);
  CHECK(st.freq(1) == doctest::Approx(dxi));
  CHECK(st.freq(3) == doctest::Approx(3 * dxi));
  CHECK(st.freq(4) == doctest::Approx(-4 * dxi));  // Nyquist
  CHECK(st.freq(7) == doctest::Approx(-dxi));
}

TEST_CASE("i xi multiplier differentiates a lattice cosine exactly") {
  BoundaryGrid g = make_grid(1, 128, 1.0 / 16.0);
  SpectralTransform st(g);
  const double S = g.half_extent();
  const double omega = 2.0 * kPi * 3.0 / (2.0 * S);  // 3rd harmonic
  std::vector<cplx> f(128), spec(128), deriv(128);
  for (int k = 0; k < 128; ++k) f[k] = cplx(std::cos(omega * g.coord(k)), 0.0);
  st.to_spectral(f.data(), spec.data());
  for (int j = 0; j < 128; ++j) spec[j] *= cplx(0.0, st.freq(j));
  st.to_physical(spec.data(), deriv.data());
  for (int k = 0; k < 128; ++k) {
    const double want = -omega * std::sin(omega * g.coord(k));
    CHECK(deriv[k].real() == doctest::Approx(want).epsilon(1e-10));
    CHECK(std::abs(deriv[k].imag()) <= 1e-11);
  }
}

TEST_CASE("mean is carried by the zero frequency") {
  BoundaryGrid g = make_grid(2, 16, 0.5);
  SpectralTransform st(g);
  SampledField f = generate("bump", GeneratorParams{}, g, 1);
  std::vector<cplx> spec(g.node_count());
  st.to_spectral(f.values.data(), spec.data());
  cplx mean(0, 0);
  for (const auto& v : f.values) mean += v;
  mean *= std::pow(g.h, 2);
  CHECK(std::abs(spec[0] - mean) <= 1e-12 * (1.0 + std::abs(mean)));
}
