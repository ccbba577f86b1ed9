#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsbmo/field.hpp"

namespace hsbmo {

// Second-order homogeneous M x M system with constant complex coefficients,
// acting as (L u)_alpha = a[alpha][beta][r][s] d_r d_s u_beta, r,s = 1..n.
// Validated strongly elliptic in the Legendre-Hadamard sense on a
// quasi-uniform sample of unit pairs (xi, eta); kappa_o is the sampled margin.
struct EllipticSystem {
  int n = 2;  // ambient dimension (boundary dimension + 1)
  int M = 1;
  std::vector<cplx> coeff;  // a(alpha,beta,r,s) flattened
  double kappa_o = 0.0;
  double coeff_norm = 0.0;  // Frobenius norm of the tensor
  std::string id;

  cplx a(int al, int be, int r, int s) const {
    return coeff[((static_cast<std::size_t>(al) * M + be) * n + r) * n + s];
  }
  cplx& a(int al, int be, int r, int s) {
    return coeff[((static_cast<std::size_t>(al) * M + be) * n + r) * n + s];
  }

  // Coefficient blocks of the symbol quadratic B2 L^2 + i B1(xi) L - B0(xi):
  //   B2[ab]      = a(a,b,n-1,n-1)
  //   B1(xi)[ab]  = sum_{j<n-1} (a(a,b,j,n-1) + a(a,b,n-1,j)) xi_j
  //   B0(xi)[ab]  = sum_{j,k<n-1} a(a,b,j,k) xi_j xi_k
  void symbol_blocks(const double* xi, cplx* B2, cplx* B1, cplx* B0) const;
};

struct EllipticityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LameParams {
  double mu = 1.0;
  double lambda = 1.0;
};

// Named systems. All factories validate ellipticity by sampling and throw
// EllipticityError (with the violating pair in the message) on failure.
EllipticSystem make_laplacian(int n);
EllipticSystem make_lame(int n, const LameParams& p);
// A is an n x n complex matrix (row-major), L = div A grad.
EllipticSystem make_scalar_divA(int n, const std::vector<cplx>& A);
// Explicit coefficient tensor a(alpha,beta,r,s), size M*M*n*n.
EllipticSystem make_system_from_tensor(int n, int M, const std::vector<cplx>& coeff,
                                       const std::string& id = "tensor");

// Dispatch by name: "laplacian", "lame", "scalar_divA".
struct SystemSpec {
  std::string name = "laplacian";
  LameParams lame;
  std::vector<cplx> A;  // for scalar_divA; empty selects a built-in default
};
EllipticSystem named_system(const SystemSpec& spec, int n);

// Default complex-coefficient matrix used by scalar_divA when none is given.
std::vector<cplx> default_divA_matrix(int n);

// Minimum of the sampled Legendre-Hadamard form; fills worst pair on request.
double legendre_hadamard_margin(int n, int M, const std::vector<cplx>& coeff,
                                std::vector<double>* worst_xi = nullptr,
                                std::vector<cplx>* worst_eta = nullptr);

}  // namespace hsbmo
