#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace selbias::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;     // unexpected error, or replay --check mismatch
inline constexpr int kUsage = 2;       // bad flags or malformed input text
inline constexpr int kInvalid = 3;     // validation or estimator precondition
inline constexpr int kBudget = 4;      // enumeration budget exceeded
inline constexpr int kIo = 5;          // unreadable input or unwritable output

// Runs `selbias <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selbias::cli
