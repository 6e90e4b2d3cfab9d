#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace multiarr {

/// Environment variable holding the default search budget.
inline constexpr const char* kBudgetEnv = "MULTIARR_BUDGET";

/// Runs one command line (without the program name).
/// Exit codes: 0 success, 1 mathematical failure or inconclusive, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multiarr
