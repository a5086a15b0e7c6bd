// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvpqc::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kSuccess = 0, kVerifyFailed = 1, kInvalidInput = 2, kInternalError = 3 };

/// "start:stop:step" (inclusive, step > 0), comma lists, or a mix of both.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_grid(const std::string& text);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvpqc::cli
