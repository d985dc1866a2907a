#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace faberelast::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailure = 1,
  kExitConfigError = 2,
  kExitDegeneracy = 3,
};

/// Entry point of the `faberelast` tool; args exclude the program name.
/// Subcommands: solve, field, validate, faber-table.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread count for grid evaluation: hardware concurrency, capped by FABERELAST_THREADS.
int grid_threads();

}  // namespace faberelast::cli
