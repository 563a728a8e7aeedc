#pragma once

#include <ostream>

namespace pfa::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFails = 1;          // counterexample, law or verification failure
inline constexpr int kBudget = 2;         // decider ran out of budget
inline constexpr int kUsage = 64;
inline constexpr int kDataFormat = 65;
inline constexpr int kInternal = 70;      // not-representable evidence or a bug

/// Runs one command line; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pfa::cli
