#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracgrow {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

// Runs `fracgrow <args...>` (args excludes the program name) and returns the
// process exit code: 0 success, 1 domain/model error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracgrow
