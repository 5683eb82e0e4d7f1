#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace derange::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failure, non-integral term, cache conflict
inline constexpr int kExitUsage = 2;    // usage or parse error, malformed cache

/// Runs the `derange` command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace derange::cli
