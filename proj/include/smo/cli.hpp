#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smo::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kPreconditionError = 2,
  kNumericError = 3,
};

/// Runs one job. args excludes the program name. Results go to `out` (or the
/// --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace smo::cli
