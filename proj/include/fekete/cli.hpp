#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fekete::cli {

/// Exit codes: 0 success, 1 a requested check or construction failed,
/// 2 usage, format or precondition error.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fekete::cli
