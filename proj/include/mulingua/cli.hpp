#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mulingua::cli {

enum ExitCode : int { Success = 0, Refuted = 1, UsageError = 2 };

/// One invocation of the driver. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`. MULINGUA_BUDGET, when set, overrides the element budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mulingua::cli
