#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffstat::cli {

inline constexpr const char* kToolName = "ffstat";
inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kInputError = 2, kBudgetError = 3 };

/// Runs one command line (without the program name). Reports go to `out`, logs and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffstat::cli
