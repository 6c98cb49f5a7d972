#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ekbench::cli {

// Executes one subcommand (args[0] is the subcommand name) and writes a
// JSON report to `out` (or to the --out path).  Returns the process exit
// code: 0 pass, 1 report-level failure, 2 usage or config error, 3
// exhausted budget or resolution.  A --config file of flat key=value
// lines expands into long flags ahead of the explicit ones, so the
// command line wins where both set a key; unknown keys are rejected.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Same, bound to std::cout / std::cerr.
int run(const std::vector<std::string>& args);

}  // namespace ekbench::cli
