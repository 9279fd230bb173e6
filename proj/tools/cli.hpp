#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace structdiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitViolation = 3;

/// Runs the command line front end. args[0] is the program name.
/// Tables go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace structdiv::cli
