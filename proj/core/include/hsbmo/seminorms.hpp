#pragma once

#include <cstdint>

#include "hsbmo/extension.hpp"

namespace hsbmo {

// L^p mean oscillation, restricted suprema, and the BMO seminorm, all as
// exhaustive sweeps over the dyadic cube family (sides 2h .. S).
double bmo_norm(const SampledField& f, double p = 1.0);

struct OscillationCurve {
  std::vector<double> radii;   // dyadic multiples of h, increasing
  std::vector<double> values;  // osc_p(f; r), nondecreasing
  bool vmo_verdict = false;    // value at smallest radius <= threshold
  double vmo_threshold = 0.0;
};
// vmo_threshold_factor scales bmo_norm(f) to form the verdict threshold.
OscillationCurve osc_curve(const SampledField& f, double p,
                           double vmo_threshold_factor = 0.05);

// sup_Q l(Q)^{-eta} (avg_Q |f-f_Q|^p)^{1/p} over the dyadic family.
double morrey_campanato(const SampledField& f, double eta, double p);

// sup |f(a)-f(b)| / |a-b|^eta over all node pairs within distance 64h plus
// 1e5 seeded long-range pairs; distances are plain Euclidean on node
// coordinates. Deterministic given the seed.
double holder_seminorm(const SampledField& f, double eta,
                       std::uint64_t seed = 0x5eedULL);

// Carleson functionals of the Littlewood-Paley integrand |grad u|^2 t dx'dt.
// The box integral per cube uses exact node sums in x' and trapezoid
// quadrature in log t over ladder levels with t <= l(Q); u must carry
// gradient channels.
double carleson_norm(const HalfSpaceField& u);

struct CarlesonProfile {
  std::vector<double> radii;
  std::vector<double> values;  // sup over l(Q) <= r, nondecreasing
};
CarlesonProfile carleson_profile(const HalfSpaceField& u);

// Fractional variant: sup_Q l(Q)^{-eta} (avg_Q (int_0^{l(Q)} |grad u|^2 t dt)^{q/2})^{1/q}.
double fractional_carleson(const HalfSpaceField& u, double eta, double q);

enum class Verdict { Vanishing, NotVanishing, Inconclusive };
const char* verdict_name(Verdict v);

struct VanishingReport {
  Verdict verdict = Verdict::Inconclusive;
  CarlesonProfile profile;
  double ratio = 0.0;  // profile(r_min) / profile(r_max)
  double threshold_vanishing = 0.1;
  double threshold_not = 0.5;
};
VanishingReport vanishing_carleson_test(const HalfSpaceField& u,
                                        double threshold_vanishing = 0.1,
                                        double threshold_not = 0.5);

struct TailReport {
  double value = 0.0;       // int_1^{S/r} osc_1(f; lambda r) dlambda / lambda^{1+eps}
  double lambda_max = 0.0;  // truncation S/r
  int nodes = 0;            // quadrature nodes used
};
// Log-spaced trapezoid quadrature of the oscillation tail integral.
TailReport oscillation_tail(const SampledField& f, double r, double eps);

// Shared verdict logic for decay tables: ratio = last/first finite value.
Verdict decay_verdict(double first, double last, double threshold_vanishing = 0.1,
                      double threshold_not = 0.5);

}  // namespace hsbmo
