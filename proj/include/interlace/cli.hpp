#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace interlace {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitBoundViolated = 2;

/// Runs one command. `args` excludes the program name. Tables go to `out`,
/// diagnostics and violated inequalities to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace interlace
