#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bsraman::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailed = 1;
inline constexpr int kConfigError = 2;

// Parses argv and runs one subcommand. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsraman::cli
