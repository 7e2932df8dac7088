#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace carlitz {

// Command-line driver. Parses `args` (program name excluded), runs the
// requested subcommand, and writes the report to `out` in the selected
// format. Returns the process exit code: 0 when no clause failed (skips and
// exploratory records are not failures), 1 when at least one clause failed,
// 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace carlitz
