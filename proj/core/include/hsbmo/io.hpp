#pragma once

#include <cstdint>
#include <string>

#include "hsbmo/extension.hpp"

namespace hsbmo {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Self-describing binary container (all little-endian):
//   magic "HSBMO1", u32 d, u32 N, f64 h, u32 M, u8 kind
//   kind 0: N^d * M complex values as (re, im) double pairs, row-major node
//           order, components interleaved last.
//   kind 1: u32 K, K f64 levels, u8 G (gradient channels, 0 or d+1), then per
//           level the values block and, when G > 0, G channel blocks.
void write_field(const std::string& path, const SampledField& f);
SampledField read_field(const std::string& path);
void write_halfspace(const std::string& path, const HalfSpaceField& u);
HalfSpaceField read_halfspace(const std::string& path);

// CSV: one row per node: coordinates, then re/im pairs per component.
void write_field_csv(const std::string& path, const SampledField& f);
SampledField read_field_csv(const std::string& path, int d, int N, double h, int M);

// Two-column CSV (e.g. radius,value) with fixed %.17g formatting.
void write_curve_csv(const std::string& path, const std::string& header,
                     const std::vector<double>& x, const std::vector<double>& y);

// 64-bit FNV-1a, the checksum used in manifests and calibration hashes.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

std::string format_double(double v);  // %.17g round-trip formatting

}  // namespace hsbmo
