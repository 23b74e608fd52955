#pragma once

#include <cmath>
#include <vector>

#include "json.hpp"
#include "riskspace/types.hpp"

namespace riskspace::cli {

using nlohmann::json;

/// Infinite values are written as the string "inf" (or "-inf").
inline json num(Real x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return static_cast<double>(x);
}

template <class Range>
json num_array(const Range& xs) {
  json out = json::array();
  for (Real x : xs) out.push_back(num(x));
  return out;
}

}  // namespace riskspace::cli
