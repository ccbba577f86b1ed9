#pragma once

#include "hsbmo/seminorms.hpp"

namespace hsbmo {

// Cone geometry for the ladder: per level, the lattice offsets y' with
// |y'| < kappa t_k (delta = 0 is always inside, so no level is empty).
// Cone sums over full discs are evaluated spectrally (circular convolution
// with the disc indicator), which is exact for the periodic grid; the small
// per-level offset lists serve the trace diagnostic and direct-summation
// cross-checks.
struct ConeStencil {
  BoundaryGrid grid;
  double kappa = 1.0;
  std::vector<double> t_levels;
  std::vector<std::vector<std::ptrdiff_t>> offsets;  // flattened node offsets (small levels only)
  std::vector<std::size_t> disc_size;                // node count of each disc
  std::vector<std::vector<cplx>> disc_spec;          // unnormalized DFT of the disc indicator
};
ConeStencil build_cone_stencil(const BoundaryGrid& grid, double kappa,
                               const std::vector<double>& t_levels);

// Lusin area function (A F)(x') = (int_{cone} |F(y,t)|^2 dy dt / t^n)^{1/2},
// |F|^2 summed over components. Returns a real-valued field (imag = 0).
SampledField area_function(const HalfSpaceField& F, const ConeStencil& st);

// Direct-summation evaluation at one node (test oracle; O(cone) work).
double area_function_at(const HalfSpaceField& F, const ConeStencil& st,
                        std::size_t node);

// Carleson operator (C F)(x') = max over dyadic Q containing x' of the
// normalized box L^2 average (int_0^{l(Q)} avg_Q |F|^2 dy dt/t)^{1/2}.
SampledField carleson_operator(const HalfSpaceField& F);

struct TentDuality {
  double lhs = 0.0;   // int |<F,G>| dx' dt / t
  double rhs = 0.0;   // int (C F)(x') (A G)(x') dx'
  double ratio = 0.0;
  bool degenerate = false;  // 0/0 reported as ratio 0 with this flag
};
TentDuality tent_duality_ratio(const HalfSpaceField& F, const HalfSpaceField& G,
                               const ConeStencil& st);

// Theta f = t d_j u for u = extend(f), realized through the extension's exact
// gradient channels (j = 0..d-1 horizontal, j = d vertical).
HalfSpaceField theta_field(const SampledField& f, const PoissonPropagator& prop,
                           int j, const std::vector<double>& t_levels);
// S_Theta f = area function of Theta f.
SampledField theta_square_function(const SampledField& f,
                                   const PoissonPropagator& prop, int j,
                                   const ConeStencil& st);

// (1,infty)-atom on a dyadic cube: supp in Q, sup norm <= |Q|^{-1}, mean 0.
struct Atom {
  Cube Q;
  SampledField values;  // scalar field on the full grid, supported in Q
};
Atom make_atom(const BoundaryGrid& grid, const Cube& Q, std::uint64_t seed);

struct MoleculeReport {
  double t = 0.0;
  std::vector<double> annulus_l2;  // k = 0: ball B_t, then dyadic annuli
  double fitted_slope = 0.0;       // log2 decay rate across annuli
  double expected_slope = 0.0;     // -(n+1)/2
  double mean_abs_max = 0.0;       // max |grid mean| over the t d_j K channels
  int annuli = 0;
};
// L^2 ladder of t grad K(.,t) on B_t and dyadic annuli; needs >= 4 annuli
// inside the box (t <= S/8).
MoleculeReport molecule_check(const PoissonPropagator& prop, double t);

struct CalderonReport {
  double max_rel_discrepancy = 0.0;  // normalized by the peak multiplier norm
  double max_rhs_norm = 0.0;
  int intervals = 0;               // quadrature nodes actually used (multiple of 8)
  std::size_t worst_frequency = 0; // flattened spectral index of the worst offender
  double worst_xi_abs = 0.0;
};
// Per-frequency check of the reproducing identity: composite Gauss-Legendre
// quadrature in log t (`intervals` total nodes, >= 64 by default) of
// 4 int_a^b (t Lambda e^{t Lambda})^2 dt/t against the closed combination
// e^{2b L}(2b L - I) - e^{2a L}(2a L - I). 0 < a < b <= S/8.
CalderonReport calderon_identity_check(const PoissonPropagator& prop, double a,
                                       double b, int intervals = 64);

}  // namespace hsbmo
