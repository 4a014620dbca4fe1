#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hatlab::cli {

enum ExitCode : int { kVerified = 0, kFalsified = 1, kUsage = 2, kInfeasible = 3 };

/// Runs one command line (without the program name). Reports go to `out`, one
/// JSON object per line; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hatlab::cli
