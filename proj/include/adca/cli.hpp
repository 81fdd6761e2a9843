#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitReplayFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one `adca` subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adca::cli
