#pragma once

#include <ostream>

namespace topoeval {

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitUsage = 2 };

/// Entry point of the topoeval command line. Reports go to `out` unless a
/// subcommand's --out names a file; diagnostics go to `err`.
/// Returns 0 on success, 1 when some files failed or some values are
/// undefined (the report is still written), 2 on usage or fatal input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace topoeval
