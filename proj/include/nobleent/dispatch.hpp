#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nobleent {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_numerical_error = 2;

/// Runs the command line `args` (without the program name). Human-readable
/// results go to `out`; diagnostics go to `err` as one JSON object per line.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nobleent
