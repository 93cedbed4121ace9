#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nahmforge {

// Runs the command-line tool on `args` (program name excluded), writing
// normal output to `out` and diagnostics to `err`.  Returns the process exit
// code: 0 on success / all-match, 1 when any check or table cell fails,
// 2 on input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nahmforge
