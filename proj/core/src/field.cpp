#include "hsbmo/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsbmo {

bool SampledField::finite() const {
  for (const cplx& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

std::vector<cplx> SampledField::mean() const {
  std::vector<cplx> m(M, cplx(0, 0));
  const std::size_t NN = grid.node_count();
  for (std::size_t k = 0; k < NN; ++k)
    for (int c = 0; c < M; ++c) m[c] += values[k * M + c];
  for (int c = 0; c < M; ++c) m[c] /= static_cast<double>(NN);
  return m;
}

CubeStatistics cube_statistics(const SampledField& f, const Cube& Q, double p) {
  const BoundaryGrid& g = f.grid;
  DyadicCubeFamily fam(g);
  if (Q.level < 0 || Q.level > fam.max_level)
    throw std::invalid_argument("cube_statistics: level outside the dyadic family");
  if (p < 1.0) throw std::invalid_argument("cube_statistics: p must be >= 1");
  const int side = Q.side_nodes();
  const int base0 = Q.j0 * side;
  const int base1 = Q.j1 * side;
  if (base0 < 0 || base0 + side > g.N || (g.d == 2 && (base1 < 0 || base1 + side > g.N)))
    throw std::invalid_argument("cube_statistics: cube outside grid");

  const int rows = (g.d == 2) ? side : 1;
  const std::size_t count = static_cast<std::size_t>(side) * rows;
  if (count == 0) throw std::logic_error("cube_statistics: empty cube");

  CubeStatistics st;
  st.mean.assign(f.M, cplx(0, 0));
  for (int r = 0; r < rows; ++r) {
    const std::size_t row0 = g.index(base0, g.d == 2 ? base1 + r : 0);
    for (int i = 0; i < side; ++i)
      for (int c = 0; c < f.M; ++c) st.mean[c] += f.values[(row0 + i) * f.M + c];
  }
  for (int c = 0; c < f.M; ++c) st.mean[c] /= static_cast<double>(count);

  double acc = 0.0;
  for (int r = 0; r < rows; ++r) {
    const std::size_t row0 = g.index(base0, g.d == 2 ? base1 + r : 0);
    for (int i = 0; i < side; ++i) {
      double dev2 = 0.0;
      for (int c = 0; c < f.M; ++c) dev2 += std::norm(f.values[(row0 + i) * f.M + c] - st.mean[c]);
      acc += (p == 1.0)   ? std::sqrt(dev2)
             : (p == 2.0) ? dev2
                          : std::pow(std::sqrt(dev2), p);
    }
  }
  acc /= static_cast<double>(count);
  st.oscillation = (p == 1.0) ? acc : (p == 2.0) ? std::sqrt(acc) : std::pow(acc, 1.0 / p);
  return st;
}

SampledField translate(const SampledField& f, int z0, int z1) {
  const BoundaryGrid& g = f.grid;
  SampledField out(g, f.M);
  auto wrap = [&](int k) {
    int r = k % g.N;
    return r < 0 ? r + g.N : r;
  };
  const int rows = (g.d == 2) ? g.N : 1;
  for (int k1 = 0; k1 < rows; ++k1) {
    const int s1 = (g.d == 2) ? wrap(k1 + z1) : 0;
    for (int k0 = 0; k0 < g.N; ++k0) {
      const std::size_t dst = g.index(k0, k1);
      const std::size_t src = g.index(wrap(k0 + z0), s1);
      for (int c = 0; c < f.M; ++c) out.values[dst * f.M + c] = f.values[src * f.M + c];
    }
  }
  return out;
}

SampledField dilate(const SampledField& f, int lambda) {
  const BoundaryGrid& g = f.grid;
  if (!is_power_of_two(lambda))
    throw std::invalid_argument("dilate: lambda must be a power of two");
  if (lambda > g.N / 8)
    throw std::invalid_argument("dilate: fewer than 8 nodes per axis would survive");
  SampledField out(g, f.M);
  // Node k maps to coordinate lambda*x_k, i.e. index lambda*k - (lambda-1)*N/2 mod N.
  auto src_of = [&](int k) {
    long s = static_cast<long>(lambda) * k - static_cast<long>(lambda - 1) * (g.N / 2);
    long r = s % g.N;
    return static_cast<int>(r < 0 ? r + g.N : r);
  };
  const int rows = (g.d == 2) ? g.N : 1;
  for (int k1 = 0; k1 < rows; ++k1) {
    const int s1 = (g.d == 2) ? src_of(k1) : 0;
    for (int k0 = 0; k0 < g.N; ++k0) {
      const std::size_t dst = g.index(k0, k1);
      const std::size_t src = g.index(src_of(k0), s1);
      for (int c = 0; c < f.M; ++c) out.values[dst * f.M + c] = f.values[src * f.M + c];
    }
  }
  return out;
}

}  // namespace hsbmo
