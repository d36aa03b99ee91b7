#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lrgeom {

// Runs the command line (program name excluded). Returns the exit code:
// 0 all checks pass, 1 some check fails, 2 input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrgeom
