#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace redist::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsageError = 2,    // bad flags, rule specs, axiom names or grids
    kDatasetError = 3,  // unreadable or invalid input dataset
    kInternalError = 4, // output not writable, unexpected failures
};

/// Runs one invocation. `args` excludes the program name. The JSON report
/// goes to `out` (or the --output file) and human messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redist::cli
