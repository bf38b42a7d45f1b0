#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topocrop::cli {

/// Exit codes: 0 success (fallbacks included), 1 usage or I/O error,
/// 2 data error (undecodable input, strict batch failure).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topocrop::cli
