#pragma once

#include <ostream>

namespace liftspec {

/// Exit codes besides 0 (success) and 1 (a verification trial failed).
inline constexpr int kExitParse = 2;
inline constexpr int kExitConsistency = 3;
inline constexpr int kExitNumerical = 4;

/// Entry point of the `liftspec` tool. Reports go to `out` in one write,
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liftspec
