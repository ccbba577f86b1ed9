#pragma once

#include <complex>
#include <vector>

#include "hsbmo/grid.hpp"

namespace hsbmo {

using cplx = std::complex<double>;

// C^M-valued function sampled on a periodic boundary grid.
// Layout: values[node * M + c], axis 0 of the node index varies fastest.
struct SampledField {
  BoundaryGrid grid;
  int M = 1;
  std::vector<cplx> values;

  SampledField() = default;
  SampledField(const BoundaryGrid& g, int components)
      : grid(g), M(components), values(g.node_count() * components) {}

  cplx& at(std::size_t node, int c) { return values[node * M + c]; }
  const cplx& at(std::size_t node, int c) const { return values[node * M + c]; }

  bool finite() const;            // no NaN/Inf entries
  std::vector<cplx> mean() const; // grid mean per component
};

struct CubeStatistics {
  std::vector<cplx> mean;  // per component
  double oscillation;      // (avg over Q of |f - f_Q|^p)^(1/p), |.| = C^M norm
};

// Q must belong to the grid's dyadic family; p >= 1.
CubeStatistics cube_statistics(const SampledField& f, const Cube& Q, double p);

// (tau_z f)(x') = f(x' + z), z in lattice steps per axis (periodic wrap).
SampledField translate(const SampledField& f, int z0, int z1 = 0);

// (delta_lambda f)(x') = f(lambda x'), lambda a power of two; resampled by
// index striding with periodic wrap. Rejects lambda > N/8.
SampledField dilate(const SampledField& f, int lambda);

}  // namespace hsbmo
