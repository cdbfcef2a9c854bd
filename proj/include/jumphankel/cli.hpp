#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jumphankel {

enum ExitCode : int { kPass = 0, kResidualViolation = 1, kUsageError = 2, kNumericalFailure = 3 };

/// Runs one subcommand. args excludes the program name, e.g.
/// {"hankel", "--n", "1..4", "--format", "json"}. The artifact goes to out
/// (or --out), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jumphankel
