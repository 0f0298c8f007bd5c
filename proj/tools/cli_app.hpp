#pragma once

#include <string>
#include <vector>

namespace steady::cli {

enum ExitCode : int { kPass = 0, kGateFailure = 1, kConfigError = 2, kNumericalError = 3 };

// Runs the command line `args` (without the program name) and returns the exit code.
int main(const std::vector<std::string>& args);

}  // namespace steady::cli
