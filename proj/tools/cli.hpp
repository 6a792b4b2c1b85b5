#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dicesim::cli {

// Stable exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAnalysisFail = 3;

/// Runs the command line (args excludes the program name). Normal output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dicesim::cli
