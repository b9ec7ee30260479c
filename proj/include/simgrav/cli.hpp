#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simgrav::cli {

enum ExitCode : int {
    kOk = 0,
    kParseError = 1,
    kValidationFailure = 2,
    kSuiteFailure = 3,
};

/// Runs one command (`args` excludes the program name). Reports go to `out`
/// as JSON with a fixed key order; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simgrav::cli
