#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fermat {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation of the tool; args excludes the program name.
/// Subcommands: count, bounds, verify, sweep, envelope.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermat
