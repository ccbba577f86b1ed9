#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hsbmo {

// Periodic boundary grid on the torus [-S, S)^d with S = N*h/2.
// Node k has coordinate (k - N/2) * h per axis, so 0 lies on the grid.
struct BoundaryGrid {
  int d = 1;       // boundary dimension, 1 or 2
  int N = 0;       // nodes per axis, power of two >= 8
  double h = 0.0;  // spacing

  double half_extent() const { return 0.5 * N * h; }
  std::size_t node_count() const {
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(N);
    return n;
  }
  double coord(int k) const { return (k - N / 2) * h; }

  // Flattened node index; axis 0 varies fastest.
  std::size_t index(int k0, int k1 = 0) const {
    return static_cast<std::size_t>(k1) * N + k0;
  }
  void unindex(std::size_t idx, int& k0, int& k1) const {
    k0 = static_cast<int>(idx % N);
    k1 = static_cast<int>(idx / N);
  }
  // Coordinates of a flattened node; out has d entries.
  void node_coords(std::size_t idx, double* out) const {
    int k0, k1;
    unindex(idx, k0, k1);
    out[0] = coord(k0);
    if (d == 2) out[1] = coord(k1);
  }
  // Squared Euclidean norm of the node coordinate vector.
  double node_abs2(std::size_t idx) const {
    int k0, k1;
    unindex(idx, k0, k1);
    double x = coord(k0);
    double r2 = x * x;
    if (d == 2) {
      double y = coord(k1);
      r2 += y * y;
    }
    return r2;
  }

  bool operator==(const BoundaryGrid& o) const {
    return d == o.d && N == o.N && h == o.h;
  }
};

// Rejects d outside {1,2}, non-power-of-two N, N < 8, h <= 0.
BoundaryGrid make_grid(int d, int N, double h);

bool is_power_of_two(int n);
int int_log2(int n);  // n must be a power of two

// Dyadic cube at level l: side (1<<l)*h nodes, corner node indices are
// multiples of 1<<l. Cubes never wrap: max side <= S, i.e. l <= log2(N)-1.
struct Cube {
  int level = 0;
  int j0 = 0, j1 = 0;  // cube position per axis: corner node index = j*(1<<level)

  int side_nodes() const { return 1 << level; }
};

struct DyadicCubeFamily {
  BoundaryGrid grid;
  int max_level = 0;  // log2(N) - 1

  explicit DyadicCubeFamily(const BoundaryGrid& g);

  // Number of cube positions per axis at a level.
  int positions(int level) const { return grid.N >> level; }
  std::size_t cube_count(int level) const {
    std::size_t c = static_cast<std::size_t>(positions(level));
    return grid.d == 2 ? c * c : c;
  }
  double side_length(int level) const { return (1 << level) * grid.h; }
};

}  // namespace hsbmo
