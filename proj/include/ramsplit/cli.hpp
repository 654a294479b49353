#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// that tests can drive it in-process.
//
// Exit codes: 0 success, 1 negative verdict, 2 usage error, 3 invalid
// input, 4 budget or bound exceeded. Every nonzero exit writes one JSON line
// {"error": kind, "message": ...} to the error stream.

#include <ostream>
#include <string>
#include <vector>

namespace ramsplit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,
  kUsage = 2,
  kInvalidInput = 3,
  kBudget = 4,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ramsplit::cli
