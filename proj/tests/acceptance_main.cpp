// Dedicated acceptance binary: runs every criterion at the configured
// boundary dimension and prints one pass/fail line each; exit 0 iff all pass.

#include <cstring>
#include <iostream>
#include <string>

#include "hsbmo/verify.hpp"

int main(int argc, char** argv) {
  hsbmo::VerifyOptions opt;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << arg << std::endl;
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--d")
      opt.d = std::stoi(next());
    else if (arg == "--calibration")
      opt.calibration_path = next();
    else if (arg == "--filter")
      opt.filter = next();
    else if (arg == "--seed")
      opt.seed = std::stoull(next());
    else if (arg == "--calibrate")
      opt.calibrate = true;
    else if (arg == "--out")
      opt.out_dir = next();
    else {
      std::cerr << "unknown argument " << arg << std::endl;
      return 2;
    }
  }
  try {
    hsbmo::VerifyReport rep = hsbmo::run_acceptance(opt);
    return rep.all_pass ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "fatal: " << ex.what() << std::endl;
    return 3;
  }
}
