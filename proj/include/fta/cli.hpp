#pragma once

// Command-line front end. Exit codes:
//   0 success or affirmative verdict
//   1 negative verdict
//   2 input error (I/O, syntax, unknown symbol or variable, bad position)
//   3 enumeration budget exceeded
//   4 precondition violated (position not essential, sets not independent)

#include <ostream>
#include <string>
#include <vector>

namespace fta {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitPrecondition = 4;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fta
