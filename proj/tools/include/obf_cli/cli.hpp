#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "obf/core.hpp"

namespace obf::cli {

enum ExitCode : int {
    Ok = 0,
    InputFailure = 2,
    NonExistent = 3,
    ImproperTraining = 4,
    RankDeficient = 5,
    Insufficient = 6,
};

int exit_code(ErrorKind kind);

// Parses argv, runs one subcommand and returns the process exit code.
// CSV goes to `out`; diagnostics and --explain notes go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obf::cli
