#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imatch::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnwritable = 3;

/// Entry point for the `imatch` tool. `args` excludes the program name.
/// Human-readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imatch::cli
