#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace branchsys {

/// Exit codes: 0 success or pass, 1 computed and failed, 2 could not compute.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInputError = 2 };

/// Entry point of the `branchsys` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace branchsys
