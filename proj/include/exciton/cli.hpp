#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exciton::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exciton::cli
