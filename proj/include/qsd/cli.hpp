#pragma once

#include <iosfwd>

namespace qsd::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invariant_failure = 1,
    exit_usage = 2,
    exit_convergence = 3,
};

/// Parses argv and runs one of eig, pdf, cdf, moment, table, verify.
/// Data goes to out, diagnostics to err; the return value is the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsd::cli
