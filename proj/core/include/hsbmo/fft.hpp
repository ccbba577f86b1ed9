#pragma once

#include <complex>
#include <vector>

#include "hsbmo/grid.hpp"

namespace hsbmo {

using cplx = std::complex<double>;

// Iterative radix-2 complex FFT with precomputed twiddles. Lengths are powers
// of two by construction of the grids. Thread-safe once built.
class Fft {
 public:
  explicit Fft(int n);
  int size() const { return n_; }

  // X[j] = sum_k x[k] e^{-2 pi i jk / N}, in place, unnormalized.
  void forward(cplx* x) const;
  // x[k] = (1/N) sum_j X[j] e^{+2 pi i jk / N}, in place.
  void inverse(cplx* x) const;

 private:
  void transform(cplx* x, bool inv) const;
  int n_;
  int log2n_;
  std::vector<cplx> tw_fwd_;  // e^{-2 pi i k / N}, k = 0..N/2-1
  std::vector<cplx> tw_inv_;
  std::vector<std::uint32_t> rev_;
};

// Transforms bound to a grid, in the physical (centered-node) convention:
//   spec[j] = h^d * sum_k phys[k] e^{-i xi_j . x_k}
//   phys[k] = (2S)^{-d} * sum_j spec[j] e^{+i xi_j . x_k}
// with x_k = (k - N/2) h and xi_j = 2 pi m_j / (2S), m_j the signed index.
// Round trip is exact up to rounding. Arrays are single-component, length N^d,
// axis 0 fastest.
class SpectralTransform {
 public:
  explicit SpectralTransform(const BoundaryGrid& g);

  const BoundaryGrid& grid() const { return grid_; }

  void to_spectral(const cplx* phys, cplx* spec) const;
  void to_physical(const cplx* spec, cplx* phys) const;

  // Signed frequency index for array index j on one axis: j <= N/2 ? j : j-N
  // (j == N/2 maps to -N/2, the Nyquist index).
  int signed_index(int j) const { return j <= grid_.N / 2 ? (j == grid_.N / 2 ? -grid_.N / 2 : j) : j - grid_.N; }
  // Per-axis frequency for array index j: 2 pi m / (N h).
  double freq(int j) const;
  // Frequency vector of a flattened spectral index; out has d entries.
  void freq_vector(std::size_t idx, double* out) const;
  // |xi|^2 of a flattened spectral index.
  double freq_abs2(std::size_t idx) const;

 private:
  BoundaryGrid grid_;
  Fft fft_;
  double dxi_;  // 2 pi / (N h)
};

}  // namespace hsbmo
