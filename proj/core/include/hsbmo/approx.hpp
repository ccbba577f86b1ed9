#pragma once

#include <functional>
#include <string>

#include "hsbmo/squarefun.hpp"

namespace hsbmo {

// Upsilon_#(s) = min{1,s} + max{0, ln s}: the sharp modulus for quantitative
// VMO density.
double upsilon_sharp(double s);

struct PsiReport {
  double a = 0.0;
  int n = 2;
  double value = 0.0;         // Psi(a) = int_0^inf s^{n-1}(a+s)^{-n} Upsilon_#(s) ds/s
  double bound_branch = 0.0;  // 3(1+ln 1/a) for a<=1, 3(1+ln a)/a for a>1
  double bound_logplus = 0.0; // 3(1+log^+ 1/a)
  bool ok = false;            // value <= bound_logplus
  bool ok_branch = false;     // value <= bound_branch
  int nodes = 0;
};
// Adaptive log-Simpson quadrature, truncated where the integrand falls below
// 1e-14 of its peak and refined until node-doubling agrees to 1e-10 relative.
PsiReport psi_bound_check(double a, int n);

// sup over sampled pairs of |f(a)-f(b)| / Upsilon(|a-b|); same pair policy as
// holder_seminorm. Returns +inf if Upsilon vanishes at a sampled distance
// with unequal values.
double upsilon_seminorm(const SampledField& f,
                        const std::function<double(double)>& Upsilon,
                        std::uint64_t seed = 0x5eedULL);

struct DecayTable {
  std::vector<double> scale;                 // eps / t / |z|, decreasing
  std::vector<std::string> columns;          // column names
  std::vector<std::vector<double>> rows;     // one row per scale
  Verdict verdict = Verdict::Inconclusive;
  double ratio = 0.0;                        // last / first of the lead column
};

// f_eps = u(., eps): rows (eps, |f-f_eps|_BMO, holder_eta(f_eps)...,
// sup |grad' f_eps|). The lead column drives the verdict. p selects the
// oscillation exponent of the sweep (John-Nirenberg makes the rates agree).
DecayTable vmo_approximation_run(const SampledField& f,
                                 const PoissonPropagator& prop,
                                 const std::vector<double>& eps_ladder,
                                 const std::vector<double>& etas = {},
                                 double p = 1.0);

// Mollifier families admitted by the real-variable characterization; each is
// sampled on the grid, normalized to unit grid mean, and validated against
// the (1+|x|)^{-d-eps} decay hypothesis at sampled radii.
// kernel is one of "gaussian", "harmonic_poisson", "bump".
DecayTable mollifier_convergence(const SampledField& f, const std::string& kernel,
                                 const std::vector<double>& t_ladder);

// Sarason translation test along the first lattice axis: rows
// (|z|, |tau_z f - f|_BMO) for z = m h e_1.
DecayTable translation_test(const SampledField& f, const std::vector<int>& z_steps);

}  // namespace hsbmo
