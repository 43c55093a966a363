#pragma once

#include <iosfwd>

namespace cuspkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedCertificate = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceLimit = 3;

/// Runs the command line; reports go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cuspkit::cli
