#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twistvol::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, budget = 3, solver = 4 };

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistvol::cli
