#pragma once

#include "hsbmo/propagator.hpp"

namespace hsbmo {

// Geometric height ladder t_k = t_min * rho^k, truncated at t_max (the last
// level is <= t_max; a final level equal to t_max is appended when the ladder
// undershoots it by more than a rounding margin).
struct TLadder {
  double t_min = 0.0;
  double rho = 1.2;
  double t_max = 0.0;
  std::vector<double> levels() const;
};

// C^M-valued function on grid x height ladder, with optional derivative
// channels d_1..d_d, d_t. Layout per level: values[node*M + c];
// grad[(ch*NN + node)*M + c] with ch = 0..d-1 horizontal, ch = d vertical.
// When only the Littlewood-Paley integrand is needed, the channels can be
// folded into grad_sq_data at build time (gradient_squared_only), which keeps
// big 2d fields affordable.
struct HalfSpaceField {
  BoundaryGrid grid;
  int M = 1;
  std::vector<double> t_levels;
  std::vector<std::vector<cplx>> values;        // one vector per level
  std::vector<std::vector<cplx>> grad;          // empty when not requested
  std::vector<std::vector<double>> grad_sq_data;  // folded |grad u|^2 per level

  bool has_gradient() const { return !grad.empty() || !grad_sq_data.empty(); }
  int grad_channels() const { return grid.d + 1; }

  // |grad u|^2 at (level, node): sum over components and all d+1 directions.
  double grad_sq(int level, std::size_t node) const {
    if (!grad_sq_data.empty()) return grad_sq_data[level][node];
    const int nch = grad_channels();
    const std::size_t NN = grid.node_count();
    const auto& g = grad[level];
    double s = 0.0;
    for (int ch = 0; ch < nch; ++ch)
      for (int c = 0; c < M; ++c) s += std::norm(g[(ch * NN + node) * M + c]);
    return s;
  }
};

struct ExtensionRequest {
  const SampledField* f = nullptr;
  const PoissonPropagator* prop = nullptr;
  std::vector<double> t_levels;
  bool with_gradient = false;
  bool gradient_squared_only = false;  // fold channels into grad_sq_data
  bool keep_values = true;             // false: skip storing u itself
  double kappa = 1.0;

  void validate() const;  // grid/system match, kappa > 0, levels increasing
};

// u(.,t_k) = inverse transform of E(xi,t_k) f_hat(xi) per level. Horizontal
// derivatives are the exact i xi_j multipliers, the vertical one is the
// Lambda(xi) E(xi,t) multiplier; no finite differences anywhere.
HalfSpaceField extend(const ExtensionRequest& req);

// u_eps(x',t) = u(x', t+eps), realized by re-extension on the shifted ladder
// (never by interpolation). The returned field keeps the original ladder.
HalfSpaceField vertical_shift(const ExtensionRequest& req, double eps);

// Boundary value u(.,eps) as a SampledField (single-level extension).
SampledField boundary_slice(const ExtensionRequest& req, double eps);

struct TraceResult {
  SampledField trace;              // u(., t_min)
  std::vector<double> diagnostic;  // per node: max |u(y,t)-trace(x)| over the cone
  double diagnostic_sup = 0.0;
};

// Trace at the lowest ladder level plus a cone-convergence diagnostic over
// {(y',t): |y'-x'| < kappa t, t <= 8 t_min}, sampled at <= 32 nearest lattice
// offsets per level. Requires t_min <= 4h.
TraceResult nontangential_trace(const HalfSpaceField& u, double kappa);

}  // namespace hsbmo
