#pragma once

#include <stdexcept>

#include "hsbmo/systems.hpp"

namespace hsbmo {

struct SolventError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stable solvent of B2 L^2 + i B1(xi) L - B0(xi) = 0: the unique M x M matrix
// whose spectrum lies in {Re < 0}, obtained by companion linearization of the
// 2M-degree pencil. The eigenvector route (L = X diag X^{-1}) is used when X
// is well conditioned; otherwise an ordered Schur decomposition of the
// companion matrix with the stable cluster leading gives L = U2 U1^{-1} from
// the orthonormal basis of the stable invariant subspace (immune to the
// defective eigenvectors of e.g. the Lame system).
struct SolventResult {
  std::vector<cplx> lambda;  // M x M row-major
  double residual = 0.0;     // Frobenius of B2 L^2 + i B1 L - B0
  double max_re = 0.0;       // largest Re over the stable spectrum (< 0)
  bool used_schur = false;
};

// xi has n-1 entries and must be nonzero. Throws SolventError when the
// stable/unstable eigenvalue split is not M/M or both routes fail.
SolventResult stable_solvent(const EllipticSystem& sys, const double* xi);

}  // namespace hsbmo
