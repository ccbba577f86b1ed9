#include "hsbmo/smallmat.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace hsbmo {

namespace smat {

void identity(int m, cplx* a) {
  for (int i = 0; i < m * m; ++i) a[i] = cplx(0, 0);
  for (int i = 0; i < m; ++i) a[i * m + i] = cplx(1, 0);
}

void mul(int m, const cplx* a, const cplx* b, cplx* c) {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      cplx s(0, 0);
      for (int k = 0; k < m; ++k) s += a[i * m + k] * b[k * m + j];
      c[i * m + j] = s;
    }
  }
}

void mulvec(int m, const cplx* a, const cplx* b, cplx* c) {
  for (int i = 0; i < m; ++i) {
    cplx s(0, 0);
    for (int k = 0; k < m; ++k) s += a[i * m + k] * b[k];
    c[i] = s;
  }
}

double frob(int m, const cplx* a) {
  double s = 0.0;
  for (int i = 0; i < m * m; ++i) s += std::norm(a[i]);
  return std::sqrt(s);
}

void axpby(int m, cplx alpha, const cplx* a, cplx beta, const cplx* b, cplx* c) {
  for (int i = 0; i < m * m; ++i) c[i] = alpha * a[i] + beta * b[i];
}

bool solve(int m, int k, cplx* a, cplx* b) {
  for (int col = 0; col < m; ++col) {
    int piv = col;
    double best = std::abs(a[col * m + col]);
    for (int r = col + 1; r < m; ++r) {
      const double v = std::abs(a[r * m + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return false;
    if (piv != col) {
      for (int j = 0; j < m; ++j) std::swap(a[piv * m + j], a[col * m + j]);
      for (int j = 0; j < k; ++j) std::swap(b[piv * k + j], b[col * k + j]);
    }
    const cplx inv_p = cplx(1, 0) / a[col * m + col];
    for (int r = col + 1; r < m; ++r) {
      const cplx f = a[r * m + col] * inv_p;
      if (f == cplx(0, 0)) continue;
      for (int j = col; j < m; ++j) a[r * m + j] -= f * a[col * m + j];
      for (int j = 0; j < k; ++j) b[r * k + j] -= f * b[col * k + j];
    }
  }
  for (int col = m - 1; col >= 0; --col) {
    const cplx inv_p = cplx(1, 0) / a[col * m + col];
    for (int j = 0; j < k; ++j) {
      cplx s = b[col * k + j];
      for (int r = col + 1; r < m; ++r) s -= a[col * m + r] * b[r * k + j];
      b[col * k + j] = s * inv_p;
    }
  }
  return true;
}

double cond_estimate(int m, const cplx* a) {
  std::vector<cplx> lu(a, a + m * m), inv(m * m);
  identity(m, inv.data());
  if (!solve(m, m, lu.data(), inv.data())) return std::numeric_limits<double>::infinity();
  return frob(m, a) * frob(m, inv.data());
}

}  // namespace smat

void MatExpWork::resize(int m) {
  const std::size_t s = static_cast<std::size_t>(m) * m;
  for (auto* buf : {&a, &a2, &a4, &a6, &u, &v, &p, &q, &t, &arg})
    if (buf->size() != s) buf->assign(s, cplx(0, 0));
}

namespace {

// Pade(13) coefficients (Higham 2005).
constexpr double kB13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                           1187353796428800.0,  129060195264000.0,   10559470521600.0,
                           670442572800.0,      33522128640.0,       1323241920.0,
                           40840800.0,          960960.0,            16380.0,
                           182.0,               1.0};

}  // namespace

void matrix_exp(int m, const cplx* a0, cplx* e, MatExpWork& w) {
  if (m == 1) {
    e[0] = std::exp(a0[0]);
    return;
  }
  w.resize(m);
  const std::size_t mm = static_cast<std::size_t>(m) * m;

  // Scaling: |A|/2^s <= theta_13.
  double norm = 0.0;  // 1-norm
  for (int j = 0; j < m; ++j) {
    double col = 0.0;
    for (int i = 0; i < m; ++i) col += std::abs(a0[i * m + j]);
    norm = std::max(norm, col);
  }
  const double theta13 = 5.371920351148152;
  int s = 0;
  if (norm > theta13) {
    s = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    if (s < 0) s = 0;
    if (s > 64) s = 64;  // exp underflows to zero well before this matters
  }
  const double scale = std::ldexp(1.0, -s);
  for (std::size_t i = 0; i < mm; ++i) w.a[i] = a0[i] * scale;

  cplx* A = w.a.data();
  cplx* A2 = w.a2.data();
  cplx* A4 = w.a4.data();
  cplx* A6 = w.a6.data();
  cplx* U = w.u.data();
  cplx* V = w.v.data();
  cplx* P = w.p.data();
  cplx* Q = w.q.data();
  cplx* T = w.t.data();

  smat::mul(m, A, A, A2);
  smat::mul(m, A2, A2, A4);
  smat::mul(m, A4, A2, A6);

  // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
  for (std::size_t i = 0; i < mm; ++i)
    T[i] = kB13[13] * A6[i] + kB13[11] * A4[i] + kB13[9] * A2[i];
  smat::mul(m, A6, T, P);
  for (std::size_t i = 0; i < mm; ++i)
    P[i] += kB13[7] * A6[i] + kB13[5] * A4[i] + kB13[3] * A2[i];
  for (int i = 0; i < m; ++i) P[i * m + i] += kB13[1];
  smat::mul(m, A, P, U);

  // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
  for (std::size_t i = 0; i < mm; ++i)
    T[i] = kB13[12] * A6[i] + kB13[10] * A4[i] + kB13[8] * A2[i];
  smat::mul(m, A6, T, V);
  for (std::size_t i = 0; i < mm; ++i)
    V[i] += kB13[6] * A6[i] + kB13[4] * A4[i] + kB13[2] * A2[i];
  for (int i = 0; i < m; ++i) V[i * m + i] += kB13[0];

  // Solve (V - U) E = (V + U).
  for (std::size_t i = 0; i < mm; ++i) {
    Q[i] = V[i] - U[i];
    P[i] = V[i] + U[i];
  }
  if (!smat::solve(m, m, Q, P)) throw std::runtime_error("matrix_exp: Pade solve failed");

  for (int step = 0; step < s; ++step) {
    smat::mul(m, P, P, T);
    std::memcpy(P, T, mm * sizeof(cplx));
  }
  std::memcpy(e, P, mm * sizeof(cplx));
}

}  // namespace hsbmo
