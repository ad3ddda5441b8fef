#pragma once

// `annulus` command-line front end.
//
//   annulus eval-green     --n 3 --a 0.5 0.7,0,0 0.3,0.5,0.1
//   annulus eval-robin     --n 3 --a 0.5 0.6 0.7 0.8
//   annulus critical-point --n 3 --a 0.5
//   annulus verify         [--seed 7] [--only symmetry,gradients]
//   annulus export-grid    robin --n 3 --a 0.5 --points 1000
//
// Exit codes: 0 success, 1 verification failure, 2 validation error,
// 3 non-convergence.

#include <iosfwd>
#include <string>
#include <vector>

namespace annulus::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kValidationError = 2,
  kNonConvergence = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace annulus::cli
