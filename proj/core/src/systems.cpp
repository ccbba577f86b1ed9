#include "hsbmo/systems.hpp"

#include <cmath>
#include <sstream>

namespace hsbmo {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Quasi-uniform unit vectors: angles on S^1, Fibonacci points on S^2.
std::vector<std::vector<double>> unit_sphere_sample(int n, int count) {
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * kPi * i / count;
      pts.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * i;
      pts.push_back({r * std::cos(a), r * std::sin(a), z});
    }
  }
  return pts;
}

// Quasi-uniform unit vectors in C^M ~ R^{2M} via a Kronecker lattice on
// angles, plus the canonical real/imaginary basis directions.
std::vector<std::vector<cplx>> unit_eta_sample(int M, int count) {
  std::vector<std::vector<cplx>> out;
  out.reserve(count + 2 * M);
  for (int c = 0; c < M; ++c) {
    std::vector<cplx> e(M, cplx(0, 0));
    e[c] = cplx(1, 0);
    out.push_back(e);
    e[c] = cplx(0, 1);
    out.push_back(e);
  }
  const double g1 = 0.6180339887498949, g2 = 0.7548776662466927, g3 = 0.5698402909980532;
  for (int i = 0; i < count; ++i) {
    std::vector<cplx> eta(M);
    double norm2 = 0.0;
    for (int c = 0; c < M; ++c) {
      const double re = std::cos(2.0 * kPi * std::fmod((i + 1) * g1 * (c + 1), 1.0)) +
                        0.3 * std::sin(2.0 * kPi * std::fmod((i + 1) * g3 * (c + 2), 1.0));
      const double im = std::sin(2.0 * kPi * std::fmod((i + 1) * g2 * (c + 1), 1.0));
      eta[c] = cplx(re, im);
      norm2 += std::norm(eta[c]);
    }
    if (norm2 <= 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : eta) v *= inv;
    out.push_back(std::move(eta));
  }
  return out;
}

double lh_form(int n, int M, const std::vector<cplx>& a, const std::vector<double>& xi,
               const std::vector<cplx>& eta) {
  cplx s(0, 0);
  for (int al = 0; al < M; ++al)
    for (int be = 0; be < M; ++be) {
      cplx quad(0, 0);
      for (int r = 0; r < n; ++r)
        for (int t = 0; t < n; ++t)
          quad += a[((static_cast<std::size_t>(al) * M + be) * n + r) * n + t] * xi[r] * xi[t];
      s += quad * std::conj(eta[al]) * eta[be];
    }
  return s.real();
}

double tensor_frob(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const cplx& v : a) s += std::norm(v);
  return std::sqrt(s);
}

EllipticSystem finish(int n, int M, std::vector<cplx> coeff, const std::string& id) {
  std::vector<double> worst_xi;
  std::vector<cplx> worst_eta;
  const double margin = legendre_hadamard_margin(n, M, coeff, &worst_xi, &worst_eta);
  if (!(margin > 0.0)) {
    std::ostringstream os;
    os << "ellipticity rejected for " << id << ": sampled margin " << margin << " at xi = (";
    for (std::size_t i = 0; i < worst_xi.size(); ++i)
      os << (i ? ", " : "") << worst_xi[i];
    os << "), eta = (";
    for (std::size_t i = 0; i < worst_eta.size(); ++i)
      os << (i ? ", " : "") << worst_eta[i].real() << (worst_eta[i].imag() < 0 ? "-" : "+")
         << std::abs(worst_eta[i].imag()) << "i";
    os << ")";
    throw EllipticityError(os.str());
  }
  EllipticSystem sys;
  sys.n = n;
  sys.M = M;
  sys.coeff = std::move(coeff);
  sys.kappa_o = margin;
  sys.coeff_norm = tensor_frob(sys.coeff);
  sys.id = id;
  return sys;
}

}  // namespace

double legendre_hadamard_margin(int n, int M, const std::vector<cplx>& coeff,
                                std::vector<double>* worst_xi,
                                std::vector<cplx>* worst_eta) {
  // >= 1e4 pairs: |xi set| * |eta set| with both quasi-uniform; eta includes
  // every xi embedded as a real/imaginary C^M direction when M == n, which
  // pins down e.g. the Lame margin exactly along eta parallel to xi.
  const int xi_count = (n == 2) ? 128 : 256;
  const int eta_count = std::max(64, 10000 / xi_count + 1);
  const auto xis = unit_sphere_sample(n, xi_count);
  auto etas = unit_eta_sample(M, eta_count);
  if (M == n) {
    for (const auto& xi : xis) {
      std::vector<cplx> e(M);
      for (int c = 0; c < M; ++c) e[c] = cplx(xi[c], 0.0);
      etas.push_back(e);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> bxi;
  std::vector<cplx> beta;
  for (const auto& xi : xis)
    for (const auto& eta : etas) {
      const double v = lh_form(n, M, coeff, xi, eta);
      if (v < best) {
        best = v;
        bxi = xi;
        beta = eta;
      }
    }
  if (worst_xi) *worst_xi = bxi;
  if (worst_eta) *worst_eta = beta;
  return best;
}

void EllipticSystem::symbol_blocks(const double* xi, cplx* B2, cplx* B1, cplx* B0) const {
  const int nt = n - 1;  // n-th direction is vertical
  for (int al = 0; al < M; ++al)
    for (int be = 0; be < M; ++be) {
      const std::size_t idx = static_cast<std::size_t>(al) * M + be;
      B2[idx] = a(al, be, nt, nt);
      cplx b1(0, 0), b0(0, 0);
      for (int j = 0; j < nt; ++j) {
        b1 += (a(al, be, j, nt) + a(al, be, nt, j)) * xi[j];
        for (int k = 0; k < nt; ++k) b0 += a(al, be, j, k) * xi[j] * xi[k];
      }
      B1[idx] = b1;
      B0[idx] = b0;
    }
}

EllipticSystem make_laplacian(int n) {
  std::vector<cplx> coeff(static_cast<std::size_t>(n) * n, cplx(0, 0));
  for (int r = 0; r < n; ++r) coeff[static_cast<std::size_t>(r) * n + r] = cplx(1, 0);
  return finish(n, 1, std::move(coeff), "laplacian");
}

EllipticSystem make_lame(int n, const LameParams& p) {
  // L u = mu Delta u + (lambda+mu) grad div u:
  //   a(al,be,r,s) = mu d_{al,be} d_{r,s} + (lambda+mu) d_{al,r} d_{be,s}
  const int M = n;
  std::vector<cplx> coeff(static_cast<std::size_t>(M) * M * n * n, cplx(0, 0));
  auto at = [&](int al, int be, int r, int s) -> cplx& {
    return coeff[((static_cast<std::size_t>(al) * M + be) * n + r) * n + s];
  };
  for (int al = 0; al < M; ++al)
    for (int be = 0; be < M; ++be)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          cplx v(0, 0);
          if (al == be && r == s) v += p.mu;
          if (al == r && be == s) v += p.lambda + p.mu;
          if (v != cplx(0, 0)) at(al, be, r, s) = v;
        }
  std::ostringstream id;
  id << "lame(mu=" << p.mu << ",lambda=" << p.lambda << ")";
  return finish(n, M, std::move(coeff), id.str());
}

EllipticSystem make_scalar_divA(int n, const std::vector<cplx>& A) {
  if (A.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("make_scalar_divA: A must be n x n");
  return finish(n, 1, A, "scalar_divA");
}

std::vector<cplx> default_divA_matrix(int n) {
  // Mildly anisotropic complex entries with a real part safely positive
  // definite; exercises the non-self-adjoint code paths.
  if (n == 2)
    return {cplx(1.5, 0.0), cplx(0.4, 0.3),  //
            cplx(-0.2, 0.1), cplx(1.0, 0.0)};
  return {cplx(1.5, 0.0),  cplx(0.2, 0.0), cplx(0.1, 0.2),   //
          cplx(0.0, 0.0),  cplx(1.2, 0.0), cplx(0.0, -0.1),  //
          cplx(0.1, -0.1), cplx(0.0, 0.2), cplx(1.0, 0.0)};
}

EllipticSystem make_system_from_tensor(int n, int M, const std::vector<cplx>& coeff,
                                       const std::string& id) {
  if (coeff.size() != static_cast<std::size_t>(M) * M * n * n)
    throw std::invalid_argument("make_system_from_tensor: coeff must be M*M*n*n");
  return finish(n, M, coeff, id);
}

EllipticSystem named_system(const SystemSpec& spec, int n) {
  if (spec.name == "laplacian") return make_laplacian(n);
  if (spec.name == "lame") return make_lame(n, spec.lame);
  if (spec.name == "scalar_divA")
    return make_scalar_divA(n, spec.A.empty() ? default_divA_matrix(n) : spec.A);
  throw std::invalid_argument("named_system: unknown system '" + spec.name + "'");
}

}  // namespace hsbmo
