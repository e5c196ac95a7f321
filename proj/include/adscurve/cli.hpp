#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adscurve {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitDegeneracy = 3, kExitIo = 4 };

/// Runs `adscurve <command> ...`; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adscurve
