#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kcube {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_refused = 3,
};

/// Runs one command line (without the program name) and returns its exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcube
