#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tomo::cli {

/// Exit codes: 0 success / inequality holds, 1 inequality violated,
/// 2 params or usage error, 3 numeric guard or ingestion failure.
enum ExitCode : int { kOk = 0, kViolated = 1, kInputError = 2, kNumericError = 3 };

/// Runs the tomokit command line; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tomo::cli
