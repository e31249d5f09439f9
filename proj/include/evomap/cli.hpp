#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evomap {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitMatch = 2,
  kExitMigration = 3,
  kExitRoundtrip = 4,
};

/// Runs one command line (without the program name). Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evomap
