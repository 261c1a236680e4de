#pragma once

#include <iosfwd>

namespace faultpath::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kUsage = 2,
    kIo = 3,
    kFormat = 4,
    kLibrary = 5,
};

// Parses argv and runs the chosen subcommand. Default output goes to `out`,
// diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace faultpath::cli
