#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qspectral::cli {

/// Exit codes: 0 success, 1 mathematical failure or tolerance violation,
/// 2 usage, I/O or format error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitInput = 2;

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qspectral::cli
