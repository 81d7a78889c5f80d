#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dirac1c/report.hpp"

namespace dirac1c {

/// Names of the individual verification suites, in run order ("all" not
/// included).
const std::vector<std::string>& verification_suites();

/// Run one named suite, or every suite when `suite == "all"`. Checks draw
/// their random inputs from streams derived from `seed`, so a report is
/// reproducible from (suite, seed) alone. Unknown suite names throw
/// ConfigError. Check failures are recorded in the report, never thrown.
Report run_verification(const std::string& suite, std::uint64_t seed);

}  // namespace dirac1c
