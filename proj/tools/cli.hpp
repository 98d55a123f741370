#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conehydro::cli {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;          // bad flags or values
inline constexpr int exit_selection_rule = 3; // l not allowed for alpha
inline constexpr int exit_no_convergence = 4; // eigensolver or shooting failed
inline constexpr int exit_schema = 5;         // material file rejected

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace conehydro::cli
