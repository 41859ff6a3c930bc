#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lzlab {

/// Exit codes of the experiment runner.
enum ExitCode : int { kExitPass = 0, kExitUsage = 1, kExitGateFailure = 2 };

/// Runs one subcommand; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lzlab
