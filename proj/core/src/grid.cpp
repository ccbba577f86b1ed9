#include "hsbmo/grid.hpp"

#include <stdexcept>
#include <string>

namespace hsbmo {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int int_log2(int n) {
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

BoundaryGrid make_grid(int d, int N, double h) {
  if (d != 1 && d != 2)
    throw std::invalid_argument("make_grid: d must be 1 or 2, got " + std::to_string(d));
  if (N < 8 || !is_power_of_two(N))
    throw std::invalid_argument("make_grid: N must be a power of two >= 8, got " +
                                std::to_string(N));
  if (!(h > 0.0)) throw std::invalid_argument("make_grid: h must be positive");
  BoundaryGrid g;
  g.d = d;
  g.N = N;
  g.h = h;
  return g;
}

DyadicCubeFamily::DyadicCubeFamily(const BoundaryGrid& g) : grid(g) {
  // Max side 2^l h <= S = N h / 2, so cubes never wrap.
  max_level = int_log2(g.N) - 1;
}

}  // namespace hsbmo
