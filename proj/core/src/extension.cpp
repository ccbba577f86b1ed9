#include "hsbmo/extension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsbmo/parallel.hpp"

namespace hsbmo {

std::vector<double> TLadder::levels() const {
  if (!(t_min > 0.0) || !(rho > 1.0) || !(t_max >= t_min))
    throw std::invalid_argument("TLadder: need t_min > 0, rho > 1, t_max >= t_min");
  std::vector<double> t;
  for (double v = t_min; v <= t_max * (1.0 + 1e-12); v *= rho) t.push_back(std::min(v, t_max));
  if (t.back() < t_max * (1.0 - 1e-9)) t.push_back(t_max);
  return t;
}

void ExtensionRequest::validate() const {
  if (!f || !prop) throw std::invalid_argument("ExtensionRequest: null field or propagator");
  if (!(f->grid == prop->grid()))
    throw std::invalid_argument("ExtensionRequest: field/propagator grid mismatch");
  if (f->M != prop->system().M)
    throw std::invalid_argument("ExtensionRequest: component count mismatch");
  if (!(kappa > 0.0)) throw std::invalid_argument("ExtensionRequest: kappa must be positive");
  if (t_levels.empty()) throw std::invalid_argument("ExtensionRequest: empty ladder");
  for (std::size_t i = 0; i + 1 < t_levels.size(); ++i)
    if (!(t_levels[i] < t_levels[i + 1]))
      throw std::invalid_argument("ExtensionRequest: ladder must be strictly increasing");
  if (!(t_levels.front() > 0.0))
    throw std::invalid_argument("ExtensionRequest: levels must be positive");
}

namespace {

// Shared worker: extend with an optional uniform level shift (vertical lift).
HalfSpaceField extend_shifted(const ExtensionRequest& req, double eps) {
  req.validate();
  const SampledField& f = *req.f;
  const PoissonPropagator& prop = *req.prop;
  const BoundaryGrid& g = f.grid;
  const SpectralTransform& st = prop.transform();
  const int M = f.M;
  const int MM = M * M;
  const std::size_t NN = g.node_count();
  const int K = static_cast<int>(req.t_levels.size());
  const int nch = g.d + 1;

  const bool want_grad = req.with_gradient || req.gradient_squared_only;
  const bool fold_grad = req.gradient_squared_only;

  HalfSpaceField u;
  u.grid = g;
  u.M = M;
  u.t_levels = req.t_levels;
  u.values.assign(K, std::vector<cplx>(req.keep_values ? NN * M : 0));
  if (want_grad && !fold_grad) u.grad.assign(K, std::vector<cplx>(NN * nch * M));
  if (fold_grad) u.grad_sq_data.assign(K, std::vector<double>(NN, 0.0));

  // f_hat per component.
  std::vector<std::vector<cplx>> fhat(M, std::vector<cplx>(NN));
  {
    std::vector<cplx> comp(NN);
    for (int c = 0; c < M; ++c) {
      for (std::size_t k = 0; k < NN; ++k) comp[k] = f.values[k * M + c];
      st.to_spectral(comp.data(), fhat[c].data());
    }
  }

  // Per level: u_hat = E f_hat, gradient multipliers i xi_j and Lambda.
  std::vector<std::vector<cplx>> spec_u(M, std::vector<cplx>(NN));
  std::vector<std::vector<cplx>> spec_g;
  if (want_grad) spec_g.assign(nch * M, std::vector<cplx>(NN));

  std::vector<cplx> phys(NN);
  for (int lev = 0; lev < K; ++lev) {
    const double t = req.t_levels[lev] + eps;
    parallel_for(NN, [&](std::size_t b, std::size_t e) {
      MatExpWork w;
      std::vector<cplx> E(MM), fv(M), uv(M), gv(M);
      double xi[2] = {0.0, 0.0};
      for (std::size_t j = b; j < e; ++j) {
        prop.propagator_at(j, t, E.data(), w);
        for (int c = 0; c < M; ++c) fv[c] = fhat[c][j];
        smat::mulvec(M, E.data(), fv.data(), uv.data());
        for (int c = 0; c < M; ++c) spec_u[c][j] = uv[c];
        if (!want_grad) continue;
        st.freq_vector(j, xi);
        for (int ch = 0; ch < g.d; ++ch) {
          const cplx mult(0.0, xi[ch]);
          for (int c = 0; c < M; ++c) spec_g[ch * M + c][j] = mult * uv[c];
        }
        smat::mulvec(M, prop.lambda(j), uv.data(), gv.data());
        for (int c = 0; c < M; ++c) spec_g[g.d * M + c][j] = gv[c];
      }
    });
    if (req.keep_values) {
      for (int c = 0; c < M; ++c) {
        st.to_physical(spec_u[c].data(), phys.data());
        for (std::size_t k = 0; k < NN; ++k) u.values[lev][k * M + c] = phys[k];
      }
    }
    if (want_grad) {
      for (int ch = 0; ch < nch; ++ch)
        for (int c = 0; c < M; ++c) {
          st.to_physical(spec_g[ch * M + c].data(), phys.data());
          if (fold_grad) {
            for (std::size_t k = 0; k < NN; ++k)
              u.grad_sq_data[lev][k] += std::norm(phys[k]);
          } else {
            for (std::size_t k = 0; k < NN; ++k)
              u.grad[lev][(static_cast<std::size_t>(ch) * NN + k) * M + c] = phys[k];
          }
        }
    }
  }
  return u;
}

}  // namespace

HalfSpaceField extend(const ExtensionRequest& req) { return extend_shifted(req, 0.0); }

HalfSpaceField vertical_shift(const ExtensionRequest& req, double eps) {
  if (eps < 0.0) throw std::invalid_argument("vertical_shift: eps must be >= 0");
  return extend_shifted(req, eps);
}

SampledField boundary_slice(const ExtensionRequest& req, double eps) {
  ExtensionRequest one = req;
  one.t_levels = {eps};
  one.with_gradient = false;
  HalfSpaceField u = extend_shifted(one, 0.0);
  SampledField out(req.f->grid, req.f->M);
  out.values = std::move(u.values[0]);
  return out;
}

TraceResult nontangential_trace(const HalfSpaceField& u, double kappa) {
  const BoundaryGrid& g = u.grid;
  const double t_min = u.t_levels.front();
  if (t_min > 4.0 * g.h + 1e-12)
    throw std::invalid_argument("nontangential_trace: ladder too coarse, need t_min <= 4h");
  const std::size_t NN = g.node_count();

  TraceResult out;
  out.trace = SampledField(g, u.M);
  out.trace.values = u.values.front();
  out.diagnostic.assign(NN, 0.0);

  // Cone sample: per level t <= 8 t_min, the <= 32 nearest lattice offsets
  // with |y'| < kappa t.
  std::vector<std::pair<int, std::vector<std::ptrdiff_t>>> levels;
  for (std::size_t lev = 0; lev < u.t_levels.size(); ++lev) {
    const double t = u.t_levels[lev];
    if (t > 8.0 * t_min * (1.0 + 1e-12)) break;
    std::vector<std::pair<double, std::ptrdiff_t>> offs;
    const int reach = std::min(g.N / 2 - 1, static_cast<int>(std::floor(kappa * t / g.h)) + 1);
    if (g.d == 1) {
      for (int dx = -reach; dx <= reach; ++dx)
        if (std::abs(dx) * g.h < kappa * t) offs.push_back({std::abs(dx) * g.h, dx});
    } else {
      for (int dy = -reach; dy <= reach; ++dy)
        for (int dx = -reach; dx <= reach; ++dx) {
          const double r = std::hypot(dx * g.h, dy * g.h);
          if (r < kappa * t) offs.push_back({r, static_cast<std::ptrdiff_t>(dy) * g.N + dx});
        }
    }
    std::sort(offs.begin(), offs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::ptrdiff_t> keep;
    for (std::size_t i = 0; i < offs.size() && i < 32; ++i) keep.push_back(offs[i].second);
    levels.push_back({static_cast<int>(lev), std::move(keep)});
  }

  parallel_for(NN, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      int k0, k1;
      g.unindex(k, k0, k1);
      double worst = 0.0;
      for (const auto& [lev, offs] : levels) {
        const auto& vals = u.values[lev];
        for (const std::ptrdiff_t off : offs) {
          // Offsets are flattened as dy*N + dx; wrap per axis.
          int dx = static_cast<int>(((off % g.N) + g.N + g.N / 2) % g.N) - g.N / 2;
          int dy = static_cast<int>((off - dx) / g.N);
          const int s0 = (k0 + dx % g.N + g.N) % g.N;
          const int s1 = g.d == 2 ? (k1 + dy % g.N + g.N) % g.N : 0;
          const std::size_t src = g.index(s0, s1);
          double dev2 = 0.0;
          for (int c = 0; c < u.M; ++c)
            dev2 += std::norm(vals[src * u.M + c] - out.trace.values[k * u.M + c]);
          worst = std::max(worst, std::sqrt(dev2));
        }
      }
      out.diagnostic[k] = worst;
    }
  });
  out.diagnostic_sup = 0.0;
  for (double v : out.diagnostic) out.diagnostic_sup = std::max(out.diagnostic_sup, v);
  return out;
}

}  // namespace hsbmo
