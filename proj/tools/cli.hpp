#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace riskspace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Writes a single JSON
/// document to out and diagnostics to err; returns the exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riskspace::cli
