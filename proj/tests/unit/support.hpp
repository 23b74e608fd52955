#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "riskspace/distmodel.hpp"
#include "riskspace/spectrum.hpp"

#define CHECK_NEAR(a, b, tol)                                                                   \
  CHECK_MESSAGE(std::fabs(static_cast<long double>(a) - static_cast<long double>(b)) <= (tol), \
                "lhs=" << static_cast<double>(a) << " rhs=" << static_cast<double>(b))

namespace oracle {

using riskspace::Real;

// Independent re-implementations used as test oracles. They work on explicit
// (breakpoints, values) lists and never call into the library's evaluators.

struct Steps {
  std::vector<Real> b;  // 0 = b_0 < ... < b_n = 1
  std::vector<Real> v;
};

inline Steps of(const riskspace::StepQuantile& d) {
  return {{d.breakpoints().begin(), d.breakpoints().end()}, {d.values().begin(), d.values().end()}};
}

inline Steps of(const riskspace::Spectrum& s) {
  return {{s.breakpoints().begin(), s.breakpoints().end()}, {s.cell_values().begin(), s.cell_values().end()}};
}

// \int_a^1 f for a step function f.
inline Real upper_integral(const Steps& f, Real a) {
  Real total = 0;
  for (std::size_t k = 0; k < f.v.size(); ++k) {
    const Real lo = std::max(a, f.b[k]);
    if (f.b[k + 1] > lo) total += f.v[k] * (f.b[k + 1] - lo);
  }
  return total;
}

// \int_0^1 f g for two step functions, midpoint rule on a fine uniform grid
// refined by both breakpoint sets (exact for steps).
inline Real product_integral(const Steps& f, const Steps& g) {
  std::vector<Real> grid = f.b;
  grid.insert(grid.end(), g.b.begin(), g.b.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  auto at = [](const Steps& s, Real u) {
    std::size_t k = 0;
    while (k + 1 < s.v.size() && s.b[k + 1] <= u) ++k;
    return s.v[k];
  };
  Real total = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const Real mid = (grid[i] + grid[i + 1]) / 2;
    total += at(f, mid) * at(g, mid) * (grid[i + 1] - grid[i]);
  }
  return total;
}

// |values| re-sorted with their masses.
inline Steps abs_sorted(const Steps& d) {
  std::vector<std::pair<Real, Real>> atoms;
  for (std::size_t k = 0; k < d.v.size(); ++k) atoms.push_back({std::fabs(d.v[k]), d.b[k + 1] - d.b[k]});
  std::sort(atoms.begin(), atoms.end());
  Steps out{{0}, {}};
  for (const auto& [v, m] : atoms) {
    out.v.push_back(v);
    out.b.push_back(out.b.back() + m);
  }
  out.b.back() = 1;
  return out;
}

}  // namespace oracle
