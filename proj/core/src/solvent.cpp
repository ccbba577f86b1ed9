#include "hsbmo/solvent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsbmo/smallmat.hpp"

namespace hsbmo {

namespace {

using EMat = Eigen::MatrixXcd;

double residual_of(const EllipticSystem& sys, const double* xi, const std::vector<cplx>& L) {
  const int M = sys.M;
  std::vector<cplx> B2(M * M), B1(M * M), B0(M * M), L2(M * M), R(M * M);
  sys.symbol_blocks(xi, B2.data(), B1.data(), B0.data());
  smat::mul(M, L.data(), L.data(), L2.data());
  std::vector<cplx> T1(M * M), T2(M * M);
  smat::mul(M, B2.data(), L2.data(), T1.data());
  smat::mul(M, B1.data(), L.data(), T2.data());
  const cplx iu(0, 1);
  for (int i = 0; i < M * M; ++i) R[i] = T1[i] + iu * T2[i] - B0[i];
  return smat::frob(M, R.data());
}

// Swap the adjacent diagonal entries T(k,k), T(k+1,k+1) of a complex Schur
// form with a Givens rotation, updating T and accumulating into Q.
void schur_swap(EMat& T, EMat& Q, int k) {
  const cplx l1 = T(k, k), l2 = T(k + 1, k + 1), t = T(k, k + 1);
  // Eigenvector of [[l1,t],[0,l2]] for l2 is (t, l2-l1).
  const cplx g1 = t, g2 = l2 - l1;
  const double nrm = std::sqrt(std::norm(g1) + std::norm(g2));
  if (nrm == 0.0) return;  // equal eigenvalues, nothing to do
  const cplx c = g1 / nrm, s = g2 / nrm;
  // G = [[c, -conj(s)], [s, conj(c)]], first column the normalized eigenvector.
  Eigen::Matrix2cd G;
  G << c, -std::conj(s), s, std::conj(c);
  T.block(k, 0, 2, T.cols()) = G.adjoint() * T.block(k, 0, 2, T.cols());
  T.block(0, k, T.rows(), 2) = T.block(0, k, T.rows(), 2) * G;
  Q.block(0, k, Q.rows(), 2) = Q.block(0, k, Q.rows(), 2) * G;
  T(k + 1, k) = cplx(0, 0);
}

}  // namespace

SolventResult stable_solvent(const EllipticSystem& sys, const double* xi) {
  const int M = sys.M;
  const int n = sys.n;
  double xi_abs = 0.0;
  for (int j = 0; j < n - 1; ++j) xi_abs += xi[j] * xi[j];
  xi_abs = std::sqrt(xi_abs);
  if (xi_abs == 0.0) throw SolventError("stable_solvent: xi must be nonzero");

  std::vector<cplx> B2(M * M), B1(M * M), B0(M * M);
  sys.symbol_blocks(xi, B2.data(), B1.data(), B0.data());

  // Companion matrix of B2 L^2 + i B1 L - B0 = 0:
  //   C = [ 0, I; B2^{-1} B0, -i B2^{-1} B1 ]
  EMat eB2(M, M), eB1(M, M), eB0(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      eB2(i, j) = B2[i * M + j];
      eB1(i, j) = B1[i * M + j];
      eB0(i, j) = B0[i * M + j];
    }
  Eigen::PartialPivLU<EMat> lu(eB2);
  const EMat S0 = lu.solve(eB0);
  const EMat S1 = lu.solve(eB1);
  EMat C = EMat::Zero(2 * M, 2 * M);
  C.block(0, M, M, M) = EMat::Identity(M, M);
  C.block(M, 0, M, M) = S0;
  C.block(M, M, M, M) = -cplx(0, 1) * S1;

  const double tol = 1e-9 * xi_abs;

  Eigen::ComplexEigenSolver<EMat> es(C, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw SolventError("stable_solvent: eigensolver failed at |xi| = " + std::to_string(xi_abs));

  int stable = 0, unstable = 0;
  for (int i = 0; i < 2 * M; ++i) {
    const double re = es.eigenvalues()(i).real();
    if (re < -tol)
      ++stable;
    else if (re > tol)
      ++unstable;
  }
  if (stable != M || unstable != M) {
    std::ostringstream os;
    os << "stable_solvent: stable/unstable split " << stable << "/" << unstable
       << " != " << M << "/" << M << " at |xi| = " << xi_abs
       << " (ellipticity sampling may have missed a violation)";
    throw SolventError(os.str());
  }

  SolventResult out;
  out.lambda.assign(static_cast<std::size_t>(M) * M, cplx(0, 0));

  // Eigenvector route: L = X diag(lam) X^{-1} from the upper halves of the
  // selected stable eigenvectors.
  {
    EMat X(M, M), D = EMat::Zero(M, M);
    int col = 0;
    double max_re = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2 * M && col < M; ++i) {
      const cplx lam = es.eigenvalues()(i);
      if (lam.real() < -tol) {
        X.col(col) = es.eigenvectors().col(i).head(M);
        D(col, col) = lam;
        max_re = std::max(max_re, lam.real());
        ++col;
      }
    }
    Eigen::PartialPivLU<EMat> xlu(X);
    const EMat Xi = xlu.inverse();
    const double cond = X.norm() * Xi.norm();
    if (std::isfinite(cond) && cond < 1e12) {
      const EMat L = X * D * Xi;
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) out.lambda[i * M + j] = L(i, j);
      out.max_re = max_re;
      out.used_schur = false;
      out.residual = residual_of(sys, xi, out.lambda);
      if (out.residual <= 1e-10 * (1.0 + xi_abs * xi_abs) * sys.coeff_norm) return out;
    }
  }

  // Ordered Schur fallback: bubble the stable cluster to the front, then the
  // stable invariant subspace is a graph and L = U2 U1^{-1}.
  Eigen::ComplexSchur<EMat> schur(C, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw SolventError("stable_solvent: Schur decomposition failed");
  EMat T = schur.matrixT();
  EMat Q = schur.matrixU();
  const int dim = 2 * M;
  for (int target = 0; target < M; ++target) {
    // Find the first stable eigenvalue at or after `target` and bubble it up.
    int src = -1;
    for (int i = target; i < dim; ++i)
      if (T(i, i).real() < -tol) {
        src = i;
        break;
      }
    if (src < 0) throw SolventError("stable_solvent: stable cluster lost in Schur reorder");
    for (int k = src; k > target; --k) schur_swap(T, Q, k - 1);
  }
  double max_re = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < M; ++i) max_re = std::max(max_re, T(i, i).real());

  const EMat U1 = Q.block(0, 0, M, M);
  const EMat U2 = Q.block(M, 0, M, M);
  Eigen::PartialPivLU<EMat> ulu(U1);
  const EMat L = U2 * ulu.inverse();
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) out.lambda[i * M + j] = L(i, j);
  out.max_re = max_re;
  out.used_schur = true;
  out.residual = residual_of(sys, xi, out.lambda);
  return out;
}

}  // namespace hsbmo
