#pragma once

#include <ostream>
#include <span>
#include <string>

namespace mpe2::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kCapacityExceeded = 2,
  kFormat = 3,
  kInconsistent = 4,
};

// Runs one command line (args[0] is the program name). Results go to out;
// failures print a single diagnostic line to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mpe2::cli
