#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subfib::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitLimit = 2;

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subfib::cli
