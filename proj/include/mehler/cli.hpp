#pragma once

#include <iosfwd>

namespace mehler {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,          ///< some experiment verdict is fail
  kExitConfigError = 2,   ///< bad flags, config file or parameters
  kExitNumericalError = 3,///< a numerical precondition failed
  kExitIoError = 4,       ///< outputs could not be written
};

/// Subcommands: density, apply, resolvent, seminorm, experiment <name>,
/// suite. Results go to files in the output directory; `out` gets one line
/// per file written and the suite table, `err` the diagnostics.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mehler
