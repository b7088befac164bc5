#pragma once

#include <iosfwd>

namespace initrec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSpectral = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitConfig = 4;

/// Entry point of the `initrec` command line. Results go to --out (or `out`),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace initrec
