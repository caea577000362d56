#pragma once

#include <iosfwd>

namespace patternex::cli {

/// Exit codes: 0 definitive answer, 1 usage or I/O error, 2 inconclusive or
/// search budget exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInconclusive = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace patternex::cli
