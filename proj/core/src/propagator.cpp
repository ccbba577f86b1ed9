#include "hsbmo/propagator.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "hsbmo/parallel.hpp"

namespace hsbmo {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

PoissonPropagator::PoissonPropagator(const EllipticSystem& sys, const BoundaryGrid& grid)
    : sys_(sys), grid_(grid), st_(grid), MM_(sys.M * sys.M) {
  if (sys.n != grid.d + 1)
    throw std::invalid_argument("PoissonPropagator: system dimension must be grid.d + 1");
  const std::size_t NN = grid.node_count();
  lambda_.assign(NN * MM_, cplx(0, 0));

  std::vector<double> worst_margin(NN, std::numeric_limits<double>::infinity());
  std::vector<double> residuals(NN, 0.0);
  std::atomic<std::size_t> schur{0};
  std::mutex err_mutex;
  std::string first_error;

  parallel_for(NN, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      if (j == 0) continue;  // xi = 0: Lambda = 0, E = I by definition
      double xi[2] = {0.0, 0.0};
      st_.freq_vector(j, xi);
      try {
        SolventResult r = stable_solvent(sys_, xi);
        std::copy(r.lambda.begin(), r.lambda.end(), lambda_.begin() + j * MM_);
        residuals[j] = r.residual;
        const double xi_abs = std::sqrt(st_.freq_abs2(j));
        worst_margin[j] = -r.max_re / xi_abs;
        if (r.used_schur) schur.fetch_add(1, std::memory_order_relaxed);
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error.empty()) first_error = ex.what();
      }
    }
  });
  if (!first_error.empty()) throw SolventError(first_error);

  residual_max_ = 0.0;
  residual_norm_max_ = 0.0;
  decay_margin_ = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < grid.node_count(); ++j) {
    residual_max_ = std::max(residual_max_, residuals[j]);
    const double denom = (1.0 + st_.freq_abs2(j)) * sys_.coeff_norm;
    residual_norm_max_ = std::max(residual_norm_max_, residuals[j] / denom);
    decay_margin_ = std::min(decay_margin_, worst_margin[j]);
  }
  schur_count_ = schur.load();
  stable_count_ok_ = decay_margin_ > 0.0;
}

void PoissonPropagator::propagator_at(std::size_t j, double t, cplx* E, MatExpWork& w) const {
  const int M = sys_.M;
  if (j == 0) {
    smat::identity(M, E);
    return;
  }
  w.resize(M);
  const cplx* L = lambda(j);
  for (int i = 0; i < MM_; ++i) w.arg[i] = t * L[i];
  matrix_exp(M, w.arg.data(), E, w);
}

SampledField kernel_field(const PoissonPropagator& prop, double t) {
  const BoundaryGrid& g = prop.grid();
  const double S = g.half_extent();
  if (!(t > 0.0) || t > S / 4.0)
    throw std::invalid_argument("kernel_field: need 0 < t <= S/4 so decay fits the box");
  const int M = prop.system().M;
  const int MM = M * M;
  const std::size_t NN = g.node_count();

  // Spectral side: E(xi,t) componentwise, then one inverse transform per entry.
  std::vector<std::vector<cplx>> spec(MM, std::vector<cplx>(NN));
  parallel_for(NN, [&](std::size_t b, std::size_t e) {
    MatExpWork w;
    std::vector<cplx> E(MM);
    for (std::size_t j = b; j < e; ++j) {
      prop.propagator_at(j, t, E.data(), w);
      for (int c = 0; c < MM; ++c) spec[c][j] = E[c];
    }
  });

  SampledField K(g, MM);
  std::vector<cplx> phys(NN);
  for (int c = 0; c < MM; ++c) {
    prop.transform().to_physical(spec[c].data(), phys.data());
    for (std::size_t k = 0; k < NN; ++k) K.values[k * MM + c] = phys[k];
  }
  return K;
}

SampledField harmonic_kernel_exact(const BoundaryGrid& g, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("harmonic_kernel_exact: t must be positive");
  const int n = g.d + 1;
  // omega_{n-1} = area of the unit sphere in R^n: 2 pi (n=2), 4 pi (n=3).
  const double omega = (n == 2) ? 2.0 * kPi : 4.0 * kPi;
  SampledField K(g, 1);
  const std::size_t NN = g.node_count();
  for (std::size_t k = 0; k < NN; ++k) {
    const double r2 = g.node_abs2(k) / (t * t);
    const double val = std::pow(t, 1 - n) * (2.0 / omega) * std::pow(1.0 + r2, -0.5 * n);
    K.values[k] = cplx(val, 0.0);
  }
  return K;
}

namespace {

// Periodized heat kernel factor on the circle of circumference 2S:
//   theta(x,u) = sum_m (4 pi u)^{-1/2} exp(-(x+2Sm)^2/(4u))
//             = (1/2S) (1 + 2 sum_m exp(-u (pi m/S)^2) cos(pi m x / S)).
// Spatial branch for small u, dual branch for large u; both truncated at 1e-18.
double theta_factor(double x, double u, double S) {
  if (u <= S * S) {
    double s = 0.0;
    const double inv4u = 1.0 / (4.0 * u);
    for (int m = 0;; ++m) {
      bool live = false;
      for (const double sign : {1.0, -1.0}) {
        if (m == 0 && sign < 0) continue;
        const double y = x + sign * 2.0 * S * m;
        const double e = y * y * inv4u;
        if (e < 42.0) {
          s += std::exp(-e);
          live = true;
        }
      }
      if (m > 0 && !live) break;
    }
    return s / std::sqrt(4.0 * kPi * u);
  }
  double s = 1.0;
  const double base = kPi / S;
  for (int m = 1;; ++m) {
    const double e = u * base * base * m * m;
    if (e > 42.0) break;
    s += 2.0 * std::exp(-e) * std::cos(base * m * x);
  }
  return s / (2.0 * S);
}

}  // namespace

SampledField harmonic_kernel_periodized(const BoundaryGrid& g, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("harmonic_kernel_periodized: t must be positive");
  const double S = g.half_extent();
  SampledField K(g, 1);
  const std::size_t NN = g.node_count();

  if (g.d == 1) {
    // (1/2S) sum_m e^{-t|xi_m|} e^{i xi_m x} = (1-r^2) / (2S (1-2r cos(pi x/S)+r^2)).
    const double r = std::exp(-kPi * t / S);
    for (std::size_t k = 0; k < NN; ++k) {
      const double x = g.coord(static_cast<int>(k));
      const double den = 1.0 - 2.0 * r * std::cos(kPi * x / S) + r * r;
      K.values[k] = cplx((1.0 - r * r) / (2.0 * S * den), 0.0);
    }
    return K;
  }

  // d = 2: subordination to the periodized heat kernel,
  //   K_per(x,t) = (t / 2 sqrt(pi)) int_0^inf u^{-3/2} e^{-t^2/(4u)}
  //                theta(x_1,u) theta(x_2,u) du,
  // numeric in log u on [t^2/200, U] plus the analytic flat tail
  // (2S)^{-2} erfc-free form (theta == 1/2S beyond U up to 1e-18).
  const double u_lo = t * t / 200.0;
  const double u_hi = std::max(4.1 * S * S, t * t * 16.0);
  const int quad = 1024;  // Simpson intervals in log u
  std::vector<double> sigma(quad + 1), weight(quad + 1);
  const double s_lo = std::log(u_lo), s_hi = std::log(u_hi);
  const double hstep = (s_hi - s_lo) / quad;
  for (int i = 0; i <= quad; ++i) {
    sigma[i] = s_lo + i * hstep;
    weight[i] = (i == 0 || i == quad) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    weight[i] *= hstep / 3.0;
  }

  // theta tables per axis value and quadrature node.
  const int N = g.N;
  std::vector<double> acc(NN, 0.0);
  std::vector<double> th(N);
  for (int i = 0; i <= quad; ++i) {
    const double u = std::exp(sigma[i]);
    for (int k = 0; k < N; ++k) th[k] = theta_factor(g.coord(k), u, S);
    // G(sigma) = u * F(u) = u^{-1/2} e^{-t^2/4u} theta theta
    const double core = std::exp(-t * t / (4.0 * u)) / std::sqrt(u);
    const double w = weight[i] * core;
    if (w == 0.0) continue;
    for (int k1 = 0; k1 < N; ++k1) {
      const double th1 = th[k1];
      double* row = acc.data() + static_cast<std::size_t>(k1) * N;
      for (int k0 = 0; k0 < N; ++k0) row[k0] += w * th1 * th[k0];
    }
  }
  const double front = t / (2.0 * std::sqrt(kPi));
  // Flat tail: theta = 1/(2S) per axis beyond u_hi.
  const double tail = std::erf(t / (2.0 * std::sqrt(u_hi))) / (4.0 * S * S);
  for (std::size_t k = 0; k < NN; ++k) K.values[k] = cplx(front * acc[k] + tail, 0.0);
  return K;
}

}  // namespace hsbmo
