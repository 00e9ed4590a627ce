// Acceptance runner: executes the verification catalogue and prints one
// pass/fail line per criterion. Exit code 0 iff everything passed.
//
//   acceptance                 run all twelve criteria
//   acceptance --criterion N   run a single criterion
//   acceptance --list          list criterion ids and names

#include <cstring>
#include <iostream>
#include <string>

#include "wdwave/acceptance.hpp"

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 12) {
        std::cerr << "criterion id must be in 1..12\n";
        return 2;
      }
    } else if (arg == "--list") {
      std::cout << "1 specfun-identities\n2 fundamental-matrix-contract\n3 mu0-closed-form\n"
                   "4 oracle-equivalence\n5 energy-decay\n6 critical-saturation\n"
                   "7 solution-operator-table\n8 model-multiplier-supnorm\n"
                   "9 duhamel-manufactured\n10 klein-gordon-transform\n11 kernel-supnorm\n"
                   "12 predictor-consistency\n";
      return 0;
    } else {
      std::cerr << "usage: acceptance [--criterion N] [--list]\n";
      return 2;
    }
  }
  auto results = wdwave::run_acceptance(only, &std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  return all ? 0 : 1;
}
