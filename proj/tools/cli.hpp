#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace halperin::cli {

// Exit codes: 0 found/constructed, 1 provably empty result, 2 usage error.
inline constexpr int kExitFound = 0;
inline constexpr int kExitEmpty = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless --out is given; warnings and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halperin::cli
