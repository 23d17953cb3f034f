#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adal {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,    // usage, unreadable or malformed input
  kExitLimit = 2,    // iteration/time limit or stall
  kExitFailure = 3,  // numerical failure, no certified bound
};

/// Runs `adal <args...>` (args[0] is the subcommand) with the given streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adal
