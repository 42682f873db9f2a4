#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace combed::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numeric = 3;

/// Runs one command line (without the program name). Results go to the
/// --output file or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace combed::cli
