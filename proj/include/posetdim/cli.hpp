#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posetdim {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,        // success or a true verdict
  kExitFalse = 1,     // a false verdict; the report carries the witness
  kExitUsage = 2,     // bad flags, unreadable input, violated preconditions
};

/// Runs one command line (without the program name). The JSON report goes
/// to --out when given, otherwise to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posetdim
