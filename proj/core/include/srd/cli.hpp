#pragma once

#include <string>
#include <vector>

namespace srd {

/// Runs the command-line surface on the given arguments (program name not
/// included). Returns the process exit code: 0 on success, 1 on usage or
/// configuration errors, 2 on numeric failures.
int run_cli(std::vector<std::string> args);

}  // namespace srd
