#pragma once

#include <cstdint>
#include <string>

#include "hsbmo/field.hpp"

namespace hsbmo {

struct GeneratorParams {
  cplx constant = cplx(3.0, 0.0);  // constant
  double eta = 0.5;                // power_eta exponent, in (0,1)
  double cutoff = 0.0;             // indicator interface x0 (0 => h/2)
  double radius = 0.0;             // bump support radius (0 => S/2)
  int components = 1;              // M of the produced field
};

// Deterministic test-function generators. Known names:
//   constant, power_eta, log_abs, bump, lacunary_bmo, indicator
// Output is bit-reproducible given (name, params, grid, seed).
SampledField generate(const std::string& name, const GeneratorParams& params,
                      const BoundaryGrid& grid, std::uint64_t seed);

// Names accepted by generate(), in canonical order.
const std::vector<std::string>& generator_names();

// SplitMix64: the deterministic PRNG used everywhere randomness is called for.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  // uniform in [-1,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace hsbmo
