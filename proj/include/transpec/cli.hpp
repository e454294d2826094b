#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace transpec::cli {

// Exit status: 0 success, 2 invalid input, 1 numerical failure.
enum ExitCode { kOk = 0, kNumericalFailure = 1, kValidationError = 2 };

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "a:b:n" (n evenly spaced points) or "v1,v2,...".
std::vector<double> parse_grid(const std::string& text);

}  // namespace transpec::cli
