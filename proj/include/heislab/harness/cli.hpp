#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace heislab::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitResourceCap = 3,
  kExitSolver = 4,
  kExitClaimFailed = 5,
};

/// Entry point of the command-line tool. `args` excludes the program name.
/// Data (CSV or JSON) goes to `out` unless --out-path is given; diagnostics
/// and fit reports go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace heislab::harness
