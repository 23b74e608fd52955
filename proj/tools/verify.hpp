#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riskspace/types.hpp"

namespace riskspace::cli {

/// One property checked over seeded random instances. The margin is the slack
/// of the inequality (rhs - lhs) or minus the discrepancy of an identity; a
/// case passes when margin >= -tol.
struct InvariantResult {
  std::string id;
  std::string anchor;  // where the property comes from, in words
  int cases = 0;
  int passed = 0;
  Real worst_margin = kInf;
  int worst_case = -1;
};

struct VerifyReport {
  std::uint64_t seed;
  int cases;
  Real tol;
  std::vector<InvariantResult> invariants;  // sorted by id
  int failures() const;
};

VerifyReport run_verify(std::uint64_t seed, int cases, Real tol);

}  // namespace riskspace::cli
