#ifndef TWOFOLD_CLI_HPP
#define TWOFOLD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace twofold::cli {

/// Exit codes of the tool.
enum ExitCode {
    exit_ok = 0,
    exit_input = 2,       // flag / coefficient / spec validation
    exit_not_closed = 3,  // orbit assembly missed closure
    exit_integrator = 4,  // event budget or step-resolution failure
    exit_verify = 5,      // oracle deviation above tolerance
};

/// Runs one invocation. `args` excludes the program name. All report output
/// goes to `out`, diagnostics to `err`; files named by --out are written to
/// the filesystem. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twofold::cli

#endif
