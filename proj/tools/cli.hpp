#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vcut::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kInternal = 3;

/// Runs one command line (without the program name). Reports go to `out`
/// as JSON lines (CSV for bench), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vcut::cli
