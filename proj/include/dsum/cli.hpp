#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsum {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFail = 1,       ///< internal error, or a witness that does not verify
  kExitInput = 2,
  kExitGuard = 3,
};

/// Runs `dsum <command> [options]`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace dsum
