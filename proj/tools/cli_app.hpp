#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magmech::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsageError = 1,
    kConfigError = 2,
    kSolverError = 3,
    kUnknownPreset = 4,
};

/// Runs one command. `args` excludes the program name. CSV goes to `out` unless
/// --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magmech::cli
