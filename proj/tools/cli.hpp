#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rshell::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kValidationFailure = 3,
  kNotConverged = 4,
};

/// Runs the command-line driver. `args` excludes the program name, e.g.
/// {"minimize", "--config", "plate.toml", "--out", "results"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rshell::cli
