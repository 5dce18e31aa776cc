#pragma once

// Command-line front end. The tool binary is a thin wrapper so the whole
// command surface can be driven from tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace hmwtpp {

// Public contract; documented in the README.
enum ExitCode : int {
  kExitOptimal = 0,
  kExitInternal = 1,
  kExitBadInput = 2,
  kExitInfeasible = 3,
  kExitTimeoutIncumbent = 4,
  kExitTimeoutNoIncumbent = 5,
  kExitValidationFailed = 6,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmwtpp
