#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace linksmooth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Parses `args` (without the program name), runs the subcommand and returns
/// the exit code. Messages go to `out`/`err`; nothing is thrown.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linksmooth::cli
