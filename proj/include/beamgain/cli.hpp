#pragma once

namespace beamgain {

/// Exit codes returned by cli_main.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitNotConverged = 4,
};

/// Subcommands: synth, sweep, validate, fixtures. Messages go to stderr.
int cli_main(int argc, char** argv);

}  // namespace beamgain
