#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hsbmo/calibration.hpp"
#include "hsbmo/generators.hpp"
#include "hsbmo/io.hpp"

using namespace hsbmo;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("binary field container round-trips bit-exactly") {
  BoundaryGrid g = make_grid(2, 16, 0.5);
  SampledField f(g, 3);
  SplitMix64 rng(19);
  for (auto& v : f.values) v = cplx(rng.symmetric(), rng.symmetric());
  const std::string path = temp_path("hsbmo_field_test.hsb");
  write_field(path, f);
  SampledField back = read_field(path);
  CHECK(back.grid == f.grid);
  CHECK(back.M == f.M);
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
  std::remove(path.c_str());
}

TEST_CASE("half-space container keeps the level table and gradients") {
  BoundaryGrid g = make_grid(1, 32, 0.25);
  HalfSpaceField u;
  u.grid = g;
  u.M = 2;
  u.t_levels = {0.25, 0.7, 1.9};
  SplitMix64 rng(23);
  u.values.assign(3, std::vector<cplx>(g.node_count() * 2));
  u.grad.assign(3, std::vector<cplx>(g.node_count() * 2 * 2));
  for (auto* block : {&u.values, &u.grad})
    for (auto& level : *block)
      for (auto& v : level) v = cplx(rng.symmetric(), rng.symmetric());
  const std::string path = temp_path("hsbmo_halfspace_test.hsb");
  write_halfspace(path, u);
  HalfSpaceField back = read_halfspace(path);
  CHECK(back.t_levels == u.t_levels);
  CHECK(back.has_gradient());
  for (int lev = 0; lev < 3; ++lev) {
    for (std::size_t i = 0; i < u.values[lev].size(); ++i)
      CHECK(back.values[lev][i] == u.values[lev][i]);
    for (std::size_t i = 0; i < u.grad[lev].size(); ++i)
      CHECK(back.grad[lev][i] == u.grad[lev][i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("kind bytes separate boundary and half-space containers") {
  BoundaryGrid g = make_grid(1, 16, 0.5);
  SampledField f(g, 1);
  const std::string path = temp_path("hsbmo_kind_test.hsb");
  write_field(path, f);
  CHECK_THROWS_AS(read_halfspace(path), IoError);
  std::remove(path.c_str());
}

TEST_CASE("CSV round trip preserves values to full precision") {
  BoundaryGrid g = make_grid(1, 16, 0.5);
  SampledField f(g, 2);
  SplitMix64 rng(31);
  for (auto& v : f.values) v = cplx(rng.symmetric() * 1e-7, rng.symmetric() * 1e5);
  const std::string path = temp_path("hsbmo_csv_test.csv");
  write_field_csv(path, f);
  SampledField back = read_field_csv(path, 1, 16, 0.5, 2);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    CHECK(back.values[i].real() == doctest::Approx(f.values[i].real()).epsilon(1e-16));
    CHECK(back.values[i].imag() == doctest::Approx(f.values[i].imag()).epsilon(1e-16));
  }
  std::remove(path.c_str());
}

TEST_CASE("fnv1a64 is stable and order-sensitive") {
  const char a[] = "abc";
  const char b[] = "acb";
  CHECK(fnv1a64(a, 3) != fnv1a64(b, 3));
  CHECK(fnv1a64(a, 3) == fnv1a64(a, 3));
  CHECK(hex64(fnv1a64(a, 3)).size() == 16);
}

TEST_CASE("calibration files carry a verified self-hash") {
  Calibration c;
  c.bands["d1:laplacian:carleson_over_bmo"] = {0.25, 4.0};
  c.constants["d1:tent_CT"] = 7.5;
  const std::string path = temp_path("hsbmo_calib_test.json");
  save_calibration(path, c);
  Calibration back = load_calibration(path);
  CHECK(back.in_band("d1:laplacian:carleson_over_bmo", 1.0));
  CHECK(!back.in_band("d1:laplacian:carleson_over_bmo", 5.0));
  CHECK(back.constant("d1:tent_CT") == doctest::Approx(7.5));

  // Corrupt one digit: the loader must fail fast on the hash mismatch.
  std::ifstream is(path);
  std::string body((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  is.close();
  const auto pos = body.find("7.5");
  REQUIRE(pos != std::string::npos);
  body[pos] = '8';
  std::ofstream os(path);
  os << body;
  os.close();
  CHECK_THROWS_AS(load_calibration(path), IoError);
  std::remove(path.c_str());
}
