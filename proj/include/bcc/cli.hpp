// Command-line front end. Exit codes: 0 success, 1 computation-contract
// violation, 2 usage error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bcc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;
inline constexpr int kExitUsage = 2;

/// argv[0] is the program name, as in main().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; prepends a program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcc
