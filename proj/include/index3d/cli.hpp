#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace index3d {

// Runs the command-line interface on argv-style arguments (without the program
// name). Returns 0 on success, 1 when a computation fails, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace index3d
