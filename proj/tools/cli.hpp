#pragma once

#include <string>
#include <vector>

namespace swarmres::cli {

// Full command-line front end, callable from tests. `args` excludes the
// program name. Returns the process exit code: 0 success, 2 configuration
// error, 3 infeasible request, 1 anything else.
int run_cli(std::vector<std::string> args);

}  // namespace swarmres::cli
