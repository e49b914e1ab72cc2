#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kstat::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kUsage = 2,
  kResource = 3,
  kDomain = 4,
  kParse = 5,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstat::cli
