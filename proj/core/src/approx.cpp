#include "hsbmo/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsbmo/generators.hpp"

namespace hsbmo {

double upsilon_sharp(double s) {
  if (s < 0.0) throw std::invalid_argument("upsilon_sharp: s must be >= 0");
  return std::min(1.0, s) + std::max(0.0, std::log(s));
}

namespace {

// Simpson sum of f over [lo, hi] with `intervals` (even) panels.
template <typename F>
double simpson(const F& f, double lo, double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

PsiReport psi_bound_check(double a, int n) {
  if (!(a > 0.0)) throw std::invalid_argument("psi_bound_check: a must be positive");
  if (n < 2) throw std::invalid_argument("psi_bound_check: n must be >= 2");
  PsiReport rep;
  rep.a = a;
  rep.n = n;

  // Integrand in sigma = ln s: s^{n-1} (a+s)^{-n} Upsilon_#(s).
  auto integrand = [&](double sigma) {
    const double s = std::exp(sigma);
    return std::pow(s, n - 1) * std::pow(a + s, -static_cast<double>(n)) * upsilon_sharp(s);
  };

  // Locate the peak and the truncation window (integrand < 1e-14 of peak).
  double peak = 0.0;
  for (double sigma = -80.0; sigma <= 80.0; sigma += 0.2)
    peak = std::max(peak, integrand(sigma));
  const double floor_val = 1e-14 * peak;
  double lo = -80.0, hi = 80.0;
  while (lo < 80.0 && integrand(lo) < floor_val) lo += 0.2;
  while (hi > -80.0 && integrand(hi) < floor_val) hi -= 0.2;
  lo -= 0.4;
  hi += 0.4;

  int intervals = 256;
  double prev = simpson(integrand, lo, hi, intervals);
  for (;;) {
    intervals *= 2;
    const double cur = simpson(integrand, lo, hi, intervals);
    if (std::abs(cur - prev) <= 1e-10 * std::max(1e-300, std::abs(cur)) || intervals >= 1 << 20) {
      rep.value = cur;
      rep.nodes = intervals + 1;
      break;
    }
    prev = cur;
  }

  rep.bound_branch = a <= 1.0 ? 3.0 * (1.0 + std::log(1.0 / a)) : 3.0 * (1.0 + std::log(a)) / a;
  rep.bound_logplus = 3.0 * (1.0 + std::max(0.0, std::log(1.0 / a)));
  rep.ok = rep.value <= rep.bound_logplus;
  rep.ok_branch = rep.value <= rep.bound_branch;
  return rep;
}

// upsilon_seminorm shares the pair sweep with holder_seminorm and is defined
// alongside it in seminorms.cpp.

DecayTable vmo_approximation_run(const SampledField& f, const PoissonPropagator& prop,
                                 const std::vector<double>& eps_ladder,
                                 const std::vector<double>& etas, double p) {
  DecayTable table;
  table.columns = {"bmo_distance"};
  for (double eta : etas) table.columns.push_back("holder_" + std::to_string(eta));
  table.columns.push_back("grad_sup");

  ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = {1.0};  // replaced per slice

  std::vector<double> ladder = eps_ladder;
  std::sort(ladder.begin(), ladder.end(), std::greater<double>());

  const SpectralTransform& st = prop.transform();
  const std::size_t NN = f.grid.node_count();
  for (double eps : ladder) {
    SampledField feps = boundary_slice(req, eps);
    SampledField diff(f.grid, f.M);
    for (std::size_t i = 0; i < diff.values.size(); ++i)
      diff.values[i] = f.values[i] - feps.values[i];
    std::vector<double> row;
    row.push_back(bmo_norm(diff, p));
    for (double eta : etas) row.push_back(holder_seminorm(feps, eta));
    // sup |grad' f_eps| via the exact horizontal multipliers.
    std::vector<std::vector<cplx>> dspec(f.grid.d, std::vector<cplx>(NN));
    std::vector<cplx> spec(NN), phys(NN);
    double grad_sup = 0.0;
    std::vector<double> gsq(NN, 0.0);
    for (int c = 0; c < f.M; ++c) {
      std::vector<cplx> comp(NN);
      for (std::size_t k = 0; k < NN; ++k) comp[k] = feps.values[k * f.M + c];
      st.to_spectral(comp.data(), spec.data());
      for (int ch = 0; ch < f.grid.d; ++ch) {
        double xi[2];
        for (std::size_t j = 0; j < NN; ++j) {
          st.freq_vector(j, xi);
          dspec[ch][j] = cplx(0.0, xi[ch]) * spec[j];
        }
        st.to_physical(dspec[ch].data(), phys.data());
        for (std::size_t k = 0; k < NN; ++k) gsq[k] += std::norm(phys[k]);
      }
    }
    for (std::size_t k = 0; k < NN; ++k) grad_sup = std::max(grad_sup, std::sqrt(gsq[k]));
    row.push_back(grad_sup);
    table.scale.push_back(eps);
    table.rows.push_back(std::move(row));
  }
  const double first = table.rows.front()[0];
  const double last = table.rows.back()[0];
  table.ratio = first > 0.0 ? last / first : 0.0;
  table.verdict = decay_verdict(first, last);
  return table;
}

namespace {

// Mollifier samples at scale t, normalized to unit grid mean body; validated
// against the (1+|x|/t)^{-(d+1)} decay hypothesis at sampled radii.
SampledField mollifier_samples(const BoundaryGrid& g, const std::string& kernel, double t) {
  SampledField phi(g, 1);
  const std::size_t NN = g.node_count();
  if (kernel == "gaussian") {
    for (std::size_t k = 0; k < NN; ++k) {
      const double r2 = g.node_abs2(k) / (t * t);
      phi.values[k] = cplx(std::exp(-0.5 * r2), 0.0);
    }
  } else if (kernel == "harmonic_poisson") {
    const int n = g.d + 1;
    for (std::size_t k = 0; k < NN; ++k) {
      const double r2 = g.node_abs2(k) / (t * t);
      phi.values[k] = cplx(std::pow(1.0 + r2, -0.5 * n), 0.0);
    }
  } else if (kernel == "bump") {
    for (std::size_t k = 0; k < NN; ++k) {
      const double r2 = g.node_abs2(k) / (t * t);
      phi.values[k] = cplx(r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0, 0.0);
    }
  } else {
    throw std::invalid_argument("mollifier_convergence: unknown kernel '" + kernel + "'");
  }
  // Unit grid mean: h^d sum phi = 1.
  double mass = 0.0;
  for (std::size_t k = 0; k < NN; ++k) mass += phi.values[k].real();
  mass *= std::pow(g.h, g.d);
  if (!(mass > 0.0)) throw std::invalid_argument("mollifier_convergence: degenerate kernel mass");
  for (auto& v : phi.values) v /= mass;

  // Decay validation: |phi_t(x)| (1+|x|/t)^{d+1} t^d bounded at sampled radii.
  double worst = 0.0;
  for (std::size_t k = 0; k < NN; k += std::max<std::size_t>(1, NN / 4096)) {
    const double r = std::sqrt(g.node_abs2(k)) / t;
    const double v = std::abs(phi.values[k].real()) * std::pow(t, g.d) *
                     std::pow(1.0 + r, g.d + 1);
    worst = std::max(worst, v);
  }
  if (worst > 1e3)
    throw std::invalid_argument("mollifier_convergence: kernel fails the decay hypothesis");
  return phi;
}

}  // namespace

DecayTable mollifier_convergence(const SampledField& f, const std::string& kernel,
                                 const std::vector<double>& t_ladder) {
  DecayTable table;
  table.columns = {"bmo_distance"};
  std::vector<double> ladder = t_ladder;
  std::sort(ladder.begin(), ladder.end(), std::greater<double>());

  const BoundaryGrid& g = f.grid;
  const std::size_t NN = g.node_count();
  SpectralTransform st(g);
  // f_hat per component once.
  std::vector<std::vector<cplx>> fhat(f.M, std::vector<cplx>(NN));
  {
    std::vector<cplx> comp(NN);
    for (int c = 0; c < f.M; ++c) {
      for (std::size_t k = 0; k < NN; ++k) comp[k] = f.values[k * f.M + c];
      st.to_spectral(comp.data(), fhat[c].data());
    }
  }
  std::vector<cplx> phihat(NN), spec(NN), phys(NN);
  for (double t : ladder) {
    SampledField phi = mollifier_samples(g, kernel, t);
    st.to_spectral(phi.values.data(), phihat.data());
    SampledField diff(g, f.M);
    for (int c = 0; c < f.M; ++c) {
      for (std::size_t j = 0; j < NN; ++j) spec[j] = phihat[j] * fhat[c][j];
      st.to_physical(spec.data(), phys.data());
      for (std::size_t k = 0; k < NN; ++k)
        diff.values[k * f.M + c] = phys[k] - f.values[k * f.M + c];
    }
    table.scale.push_back(t);
    table.rows.push_back({bmo_norm(diff, 1.0)});
  }
  const double first = table.rows.front()[0];
  const double last = table.rows.back()[0];
  table.ratio = first > 0.0 ? last / first : 0.0;
  table.verdict = decay_verdict(first, last);
  return table;
}

DecayTable translation_test(const SampledField& f, const std::vector<int>& z_steps) {
  DecayTable table;
  table.columns = {"bmo_distance"};
  std::vector<int> steps = z_steps;
  std::sort(steps.begin(), steps.end(), std::greater<int>());
  for (int m : steps) {
    SampledField shifted = translate(f, m, 0);
    SampledField diff(f.grid, f.M);
    for (std::size_t i = 0; i < diff.values.size(); ++i)
      diff.values[i] = shifted.values[i] - f.values[i];
    table.scale.push_back(m * f.grid.h);
    table.rows.push_back({bmo_norm(diff, 1.0)});
  }
  const double first = table.rows.front()[0];
  const double last = table.rows.back()[0];
  table.ratio = first > 0.0 ? last / first : 0.0;
  table.verdict = decay_verdict(first, last);
  return table;
}

}  // namespace hsbmo
