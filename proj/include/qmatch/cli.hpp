#ifndef QMATCH_CLI_HPP
#define QMATCH_CLI_HPP

// Command dispatch for the qmatch tool. Exit codes: 0 success / feasible /
// minimal, 1 infeasible / not minimal, 2 input error.

#include <ostream>
#include <string>
#include <vector>

namespace qmatch::cli {

enum ExitCode : int { ok = 0, negative = 1, input_error = 2 };

/// Runs one command line (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmatch::cli

#endif
