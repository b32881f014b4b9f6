#pragma once

#include <ostream>

namespace chainctl::cli {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitBudget = 3,
  kExitDivergence = 4,
};

/// Runs the tool. Human-readable output goes to `out`; every error is
/// reported on `err` as a single-line JSON diagnostic.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chainctl::cli
