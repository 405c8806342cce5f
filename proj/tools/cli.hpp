#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gifstile {

// Exit codes shared by all commands.
enum ExitCode : int { exit_pass = 0, exit_error = 1, exit_fail = 2, exit_inconclusive = 3 };

// Runs the command line `args` (without the program name). Results go to
// `out`, messages to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gifstile
