#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace riskspace {

// Probabilities near 1 must stay distinguishable down to ~2^-60, which is
// out of reach for double.
using Real = long double;

inline constexpr Real kInf = std::numeric_limits<Real>::infinity();

/// Absolute tolerance for segment arithmetic and ordering checks.
inline constexpr Real kTol = 1e-12L;
/// Absolute tolerance for spectrum normalization.
inline constexpr Real kNormTol = 1e-10L;

/// Raised for malformed CSV / JSON input. Carries the 1-based line number
/// when one is known (0 otherwise).
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace riskspace
