#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxdes::cli {

enum ExitCode : int {
    ok = 0,
    failure = 1,
    parse_error = 2,
    cap_exceeded = 3,
    consistency_failure = 4,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3..10", "4,8,16", "2..5,9"; ascending and de-duplicated.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace coxdes::cli
