#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eccforge::cli {

inline constexpr int kExitOk = 0;
/// UNSAT, invalid cover, no cover within k, extraction failure.
inline constexpr int kExitNegative = 1;
/// Bad command line, unreadable or malformed files, exceeded guards.
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace eccforge::cli
