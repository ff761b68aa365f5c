#pragma once

#include <iosfwd>

namespace xydm::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kNumericalFailure = 2;
inline constexpr int kToleranceExceeded = 3;

/// Runs the command line; output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xydm::cli
