#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geography {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_invariant = 1,
    exit_malformed = 2,
    exit_not_psef = 3,
};

/// Runs the tool on argv[1..]; reports go to `out`, diagnostics to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace geography
