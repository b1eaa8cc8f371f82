#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpq::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kConfigError = 2;

/// Runs the lpq command line on args (without the program name). Reports go to
/// the --out file, else to $LPQ_OUTPUT_DIR/<command>.<format>, else to `out`;
/// when a file is written a short summary is printed to `out` instead.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpq::cli
