#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bwkit::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitSolverFailure = 3,
  kExitValidationFailure = 4,
};

/// Runs the command line `args` (without the program name). The report goes to
/// `--out` when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bwkit::app
