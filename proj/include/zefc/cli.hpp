#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zefc::cli {

enum ExitCode : int {
    success = 0,
    validation_error = 2,
    verification_failure = 3,
    cap_exceeded = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace zefc::cli
