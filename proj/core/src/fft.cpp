#include "hsbmo/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbmo {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

Fft::Fft(int n) : n_(n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("Fft: length must be a power of two");
  log2n_ = int_log2(n);
  tw_fwd_.resize(n / 2);
  tw_inv_.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * kPi * k / n;
    tw_fwd_[k] = cplx(std::cos(ang), std::sin(ang));
    tw_inv_[k] = std::conj(tw_fwd_[k]);
  }
  rev_.resize(n);
  for (int i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (int b = 0; b < log2n_; ++b)
      if (i & (1 << b)) r |= 1u << (log2n_ - 1 - b);
    rev_[i] = r;
  }
}

void Fft::transform(cplx* x, bool inv) const {
  const std::vector<cplx>& tw = inv ? tw_inv_ : tw_fwd_;
  for (int i = 0; i < n_; ++i) {
    const std::uint32_t j = rev_[i];
    if (static_cast<std::uint32_t>(i) < j) std::swap(x[i], x[j]);
  }
  for (int len = 2; len <= n_; len <<= 1) {
    const int half = len >> 1;
    const int stride = n_ / len;
    for (int i = 0; i < n_; i += len) {
      for (int k = 0; k < half; ++k) {
        const cplx w = tw[k * stride];
        const cplx u = x[i + k];
        const cplx v = x[i + k + half] * w;
        x[i + k] = u + v;
        x[i + k + half] = u - v;
      }
    }
  }
}

void Fft::forward(cplx* x) const { transform(x, false); }

void Fft::inverse(cplx* x) const {
  transform(x, true);
  const double inv_n = 1.0 / n_;
  for (int i = 0; i < n_; ++i) x[i] *= inv_n;
}

SpectralTransform::SpectralTransform(const BoundaryGrid& g)
    : grid_(g), fft_(g.N), dxi_(2.0 * kPi / (g.N * g.h)) {}

double SpectralTransform::freq(int j) const { return dxi_ * signed_index(j); }

void SpectralTransform::freq_vector(std::size_t idx, double* out) const {
  int k0, k1;
  grid_.unindex(idx, k0, k1);
  out[0] = freq(k0);
  if (grid_.d == 2) out[1] = freq(k1);
}

double SpectralTransform::freq_abs2(std::size_t idx) const {
  double xi[2] = {0.0, 0.0};
  freq_vector(idx, xi);
  double s = xi[0] * xi[0];
  if (grid_.d == 2) s += xi[1] * xi[1];
  return s;
}

// Centered nodes x_k = (k-N/2)h give e^{-i xi_m x_k} = (-1)^m e^{-2 pi i mk/N}
// (N even), so the physical convention is the index-space FFT with (-1)^j
// sign flips on the spectral side and the h^d measure factor.
void SpectralTransform::to_spectral(const cplx* phys, cplx* spec) const {
  const int N = grid_.N;
  const double scale = std::pow(grid_.h, grid_.d);
  if (grid_.d == 1) {
    for (int k = 0; k < N; ++k) spec[k] = phys[k];
    fft_.forward(spec);
    for (int j = 0; j < N; ++j) spec[j] *= (j & 1) ? -scale : scale;
    return;
  }
  const std::size_t NN = grid_.node_count();
  for (std::size_t i = 0; i < NN; ++i) spec[i] = phys[i];
  // rows (axis 0), then columns (axis 1)
  for (int k1 = 0; k1 < N; ++k1) fft_.forward(spec + static_cast<std::size_t>(k1) * N);
  std::vector<cplx> col(N);
  for (int j0 = 0; j0 < N; ++j0) {
    for (int k1 = 0; k1 < N; ++k1) col[k1] = spec[static_cast<std::size_t>(k1) * N + j0];
    fft_.forward(col.data());
    for (int j1 = 0; j1 < N; ++j1) spec[static_cast<std::size_t>(j1) * N + j0] = col[j1];
  }
  for (std::size_t i = 0; i < NN; ++i) {
    int j0, j1;
    grid_.unindex(i, j0, j1);
    spec[i] *= ((j0 + j1) & 1) ? -scale : scale;
  }
}

void SpectralTransform::to_physical(const cplx* spec, cplx* phys) const {
  const int N = grid_.N;
  const double scale = 1.0 / std::pow(grid_.h, grid_.d);
  if (grid_.d == 1) {
    for (int j = 0; j < N; ++j) phys[j] = (j & 1) ? -spec[j] : spec[j];
    fft_.inverse(phys);
    for (int k = 0; k < N; ++k) phys[k] *= scale;
    return;
  }
  const std::size_t NN = grid_.node_count();
  for (std::size_t i = 0; i < NN; ++i) {
    int j0, j1;
    grid_.unindex(i, j0, j1);
    phys[i] = ((j0 + j1) & 1) ? -spec[i] : spec[i];
  }
  for (int k1 = 0; k1 < N; ++k1) fft_.inverse(phys + static_cast<std::size_t>(k1) * N);
  std::vector<cplx> col(N);
  for (int j0 = 0; j0 < N; ++j0) {
    for (int k1 = 0; k1 < N; ++k1) col[k1] = phys[static_cast<std::size_t>(k1) * N + j0];
    fft_.inverse(col.data());
    for (int j1 = 0; j1 < N; ++j1) phys[static_cast<std::size_t>(j1) * N + j0] = col[j1];
  }
  for (std::size_t i = 0; i < NN; ++i) phys[i] *= scale;
}

}  // namespace hsbmo
