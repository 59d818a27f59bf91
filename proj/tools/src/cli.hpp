#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace centralcfg::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_invalid_input = 1,
  exit_no_convergence = 2,
  exit_spurious_only = 3,
  exit_property_violation = 4,
  exit_rejected = 5,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"solve", "--masses", "1,1,1,1", "--a", "-1.5"}. Results go to `out`
/// (or the files named by --out/--summary/--plot), diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace centralcfg::cli
