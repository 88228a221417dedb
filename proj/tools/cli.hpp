#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "secretary/strategy.hpp"

namespace secretary::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Builds one strategy per agent from a comma-separated list; a single
/// entry is replicated to all k agents. `equilibrium` resolves to sigma
/// under random ties and to the computed ranked thresholds otherwise.
Profile parse_profile(const std::string& spec, int n, int k, TieRule tie);

/// Entry point shared by the executable and the tests. The vector form takes
/// the arguments without the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secretary::cli
