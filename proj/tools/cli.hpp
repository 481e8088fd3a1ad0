#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace forecite {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitMissingLabels = 3 };

// Runs the forecite command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forecite
