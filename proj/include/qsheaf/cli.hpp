#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsheaf {

/// Exit statuses shared by every subcommand.
enum ExitStatus : int {
  kHolds = 0,
  kFails = 1,
  kUsageError = 2,
};

/// Runs the command line `args` (without the program name) and returns the
/// exit status. Subcommands: validate, audit, check-sheaf, dualize, functors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsheaf
