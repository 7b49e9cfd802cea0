#pragma once

#include <iosfwd>

namespace conicdet::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kInconclusive = 3;
inline constexpr int kOutOfRegime = 4;

/// Parses argv, runs one command and returns its exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conicdet::cli
