#pragma once

#include <map>
#include <string>

namespace hsbmo {

// Frozen comparability bands and constants: every "comparable with a constant
// depending only on (n, L)" claim becomes a band assertion against values
// committed here. Keys look like "d1:lame:carleson_over_bmo".
struct Calibration {
  std::map<std::string, std::pair<double, double>> bands;
  std::map<std::string, double> constants;
  std::string self_hash;  // hex FNV-1a of the canonical body

  std::string canonical_body() const;
  std::string compute_hash() const;

  bool in_band(const std::string& key, double value) const;
  const std::pair<double, double>& band(const std::string& key) const;
  double constant(const std::string& key) const;
  bool has_band(const std::string& key) const { return bands.count(key) > 0; }
  bool has_constant(const std::string& key) const { return constants.count(key) > 0; }
};

// JSON serialization; load verifies the embedded self-hash and throws on
// mismatch (fail-fast on corrupted calibration).
void save_calibration(const std::string& path, Calibration& c);
Calibration load_calibration(const std::string& path);

}  // namespace hsbmo
