#pragma once

#include <complex>
#include <vector>

namespace hsbmo {

using cplx = std::complex<double>;

// Dense m x m complex matrices stored row-major in flat arrays. The systems
// here are tiny (m <= 3 for the named operators), so everything is plain
// loops over contiguous storage.
namespace smat {

void identity(int m, cplx* a);
// c = a * b
void mul(int m, const cplx* a, const cplx* b, cplx* c);
// c = a * b restricted to matrix * vector, b and c length m
void mulvec(int m, const cplx* a, const cplx* b, cplx* c);
double frob(int m, const cplx* a);
// c = alpha*a + beta*b
void axpby(int m, cplx alpha, const cplx* a, cplx beta, const cplx* b, cplx* c);
// Solve a * x = b for k right-hand sides (b is m x k row-major), in place
// Gaussian elimination with partial pivoting. Returns false if singular.
bool solve(int m, int k, cplx* a, cplx* b);
// Infinity norm condition estimate via explicit inverse (fine for m <= 6).
double cond_estimate(int m, const cplx* a);

}  // namespace smat

// Workspace for the scaling-and-squaring exponential; reuse across calls to
// avoid allocation in per-frequency loops. `arg` is caller scratch for
// assembling the argument matrix.
struct MatExpWork {
  std::vector<cplx> a, a2, a4, a6, u, v, p, q, t, arg;
  void resize(int m);
};

// e = exp(a) for an m x m complex matrix, Pade(13) with scaling and squaring.
// Falls back to scalar std::exp for m == 1.
void matrix_exp(int m, const cplx* a, cplx* e, MatExpWork& w);

}  // namespace hsbmo
