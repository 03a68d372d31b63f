#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quarkonia::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kNoBoundStates = 2,
  kUsage = 64,
};

/// Runs one `quarkonia` invocation. `args` excludes the program name.
/// Documents go to files (or `out` when no --out is given); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quarkonia::cli
