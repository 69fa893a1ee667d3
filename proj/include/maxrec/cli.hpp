#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxrec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

/// Runs `maxrec <args...>`; `args` excludes the program name. Normal
/// output goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxrec::cli
