#pragma once

// The grq command-line harness, callable in-process for tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace grq::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,      // bad flags, invalid input, violated hypotheses
  kExitViolation = 2,  // a certificate or enforced bound failed
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace grq::cli
