#pragma once

namespace ctc {

/// Full command-line entry point: parses arguments, loads the configuration
/// (exactly one of --config FILE or --preset NAME), applies --out/--seed/
/// --workers overrides, writes a replayable manifest.ini plus the command's
/// data files into the output directory, and prints a one-line summary.
///
/// Exit codes: 0 success, 2 usage or configuration error, 3 integration or
/// other runtime failure, 4 analysis precondition violation.
int run_cli(int argc, const char* const* argv);

}  // namespace ctc
