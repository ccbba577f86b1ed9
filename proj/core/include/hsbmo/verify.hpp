#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsbmo/calibration.hpp"

namespace hsbmo {

struct VerifyOptions {
  int d = 1;                    // 1 => N=2048, S=8; 2 => N=256, S=4
  std::string filter;           // substring filter on criterion names
  bool calibrate = false;       // regenerate the calibration instead of asserting
  std::string calibration_path; // required unless calibrate
  std::string out_dir;          // reports land here (empty: no files)
  std::uint64_t seed = 20240817ULL;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool ran = false;  // false when filtered out
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool all_pass = true;
  double seconds = 0.0;
  std::string calibration_hash;
};

// Runs the acceptance criteria for the configured boundary dimension and
// prints one pass/fail line per criterion to stdout. In calibrate mode the
// measured bands/constants are written to calibration_path instead of being
// asserted (criteria that do not depend on calibration still run and assert).
VerifyReport run_acceptance(const VerifyOptions& opt);

}  // namespace hsbmo
