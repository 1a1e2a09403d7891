#ifndef MEINARDUS_TOOLS_CLI_HPP
#define MEINARDUS_TOOLS_CLI_HPP

#include <iosfwd>

namespace meinardus::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Subcommands: count, delta, formula, compare, check-cond3, belief.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace meinardus::cli

#endif
