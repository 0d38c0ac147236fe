#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mapeval::cli {

enum ExitCode : int {
  kExitOk = 0,
  /// An evaluation failed (a run under --strict, or an empty association).
  kExitEvaluationFailure = 1,
  /// Bad flags, unreadable input or unwritable output.
  kExitUsage = 2,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Results go to `out` unless redirected with -o;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapeval::cli
