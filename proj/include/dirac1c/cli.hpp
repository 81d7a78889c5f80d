#pragma once

namespace dirac1c {

/// Entry point of the dirac1c command line tool, callable in process.
/// Returns the process exit code: 0 all checks passed, 1 a check failed,
/// 2 usage or configuration error.
int cli_main(int argc, const char* const* argv);

}  // namespace dirac1c
