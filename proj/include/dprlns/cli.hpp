#ifndef DPRLNS_CLI_HPP_
#define DPRLNS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace dprlns::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `dprlns` tool; `args` excludes the program name.
/// Subcommands: solve, bench, generate, traces, init-weights.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dprlns::cli

#endif  // DPRLNS_CLI_HPP_
