#pragma once

#include <memory>

#include "hsbmo/fft.hpp"
#include "hsbmo/smallmat.hpp"
#include "hsbmo/solvent.hpp"

namespace hsbmo {

// Per-frequency stable solvents Lambda(xi) for a system on a grid, together
// with the propagators E(xi,t) = exp(t Lambda(xi)). At xi = 0 the construction
// is singular and the propagator is defined directly as E = I, which is what
// reproduces constants. Construction is parallel over frequencies; the built
// object is immutable and shareable.
class PoissonPropagator {
 public:
  PoissonPropagator(const EllipticSystem& sys, const BoundaryGrid& grid);

  const EllipticSystem& system() const { return sys_; }
  const BoundaryGrid& grid() const { return grid_; }
  const SpectralTransform& transform() const { return st_; }

  // Lambda at flattened spectral index j (M x M row-major); zero matrix at j=0.
  const cplx* lambda(std::size_t j) const { return lambda_.data() + j * MM_; }

  // E = exp(t * Lambda(xi_j)); identity at j = 0.
  void propagator_at(std::size_t j, double t, cplx* E, MatExpWork& w) const;

  double residual_max() const { return residual_max_; }
  // max over frequencies of residual / ((1+|xi|^2) |coeff|): the normalized
  // form the solvent invariant is stated in.
  double residual_norm_max() const { return residual_norm_max_; }
  // c > 0 such that Re lambda <= -c |xi| held at every nonzero frequency.
  double decay_margin() const { return decay_margin_; }
  std::size_t schur_count() const { return schur_count_; }
  bool stable_count_ok() const { return stable_count_ok_; }

 private:
  EllipticSystem sys_;
  BoundaryGrid grid_;
  SpectralTransform st_;
  int MM_;
  std::vector<cplx> lambda_;
  double residual_max_ = 0.0;
  double residual_norm_max_ = 0.0;
  double decay_margin_ = 0.0;
  std::size_t schur_count_ = 0;
  bool stable_count_ok_ = true;
};

// Physical-space kernel K^L(.,t) on the grid via the inverse transform of
// E(.,t): an (M x M)-component SampledField laid out component-major as
// c = alpha*M + beta. Requires t <= S/4 so the decay fits the box.
SampledField kernel_field(const PoissonPropagator& prop, double t);

// Classical harmonic Poisson kernel P_t(x') = t^{1-n} (2/omega_{n-1})
// (1+|x'/t|^2)^{-n/2}, sampled pointwise (no periodization).
SampledField harmonic_kernel_exact(const BoundaryGrid& grid, double t);

// Periodization sum_m P_t(x' + 2S m), the object kernel_field(laplacian)
// actually realizes on the torus. d=1 uses the closed series form; d=2 is
// evaluated through the heat-kernel subordination formula with Jacobi theta
// factors, both to well below 1e-6 relative.
SampledField harmonic_kernel_periodized(const BoundaryGrid& grid, double t);

}  // namespace hsbmo
