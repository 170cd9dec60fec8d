#pragma once

// The `superfluid` command-line front end, callable in-process for testing.

#include <iosfwd>
#include <string>
#include <vector>

namespace superfluid::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// Parses `args` (without the program name) and runs the selected
/// subcommand. Artifacts go to --out when given, otherwise to `out`;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a comma-separated list of numbers; "inf" is accepted. Throws
/// std::invalid_argument on an empty list or a malformed entry.
std::vector<double> parse_grid(const std::string& text);

}  // namespace superfluid::cli
