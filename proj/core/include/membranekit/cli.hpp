#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mkit::experiment {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

/// Runs `membrane-kit <subcommand> ...`. `args` excludes the program name.
/// Output goes to `out`, diagnostics and usage text to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mkit::experiment
