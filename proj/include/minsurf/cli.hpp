#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minsurf {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitInputError = 2 };

/// Runs one minsurf command. argv[0] is the program name. The report goes to `out`
/// (JSON with --json), diagnostics to `err`.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace minsurf
