#include "riskspace/embed.hpp"

#include <algorithm>
#include <cmath>

#include "riskspace/riskcore.hpp"

namespace riskspace {
namespace {

std::vector<Real> cuts(const Spectrum& sigma) {
  if (sigma.is_step()) return {sigma.breakpoints().begin(), sigma.breakpoints().end()};
  auto mesh = geometric_mesh(60);
  mesh.insert(mesh.begin(), 0);
  mesh.push_back(1);
  return mesh;
}

Real tail_ratio(const Spectrum& s1, const Spectrum& s2, Real alpha) {
  const Real num = s2.tail(alpha);
  const Real den = s1.tail(alpha);
  if (den > 0) return num / den;
  return num > 0 ? kInf : Real{1};
}

}  // namespace

Comparability comparability_constant(const Spectrum& sigma1, const Spectrum& sigma2) {
  sigma1.require_valid();
  sigma2.require_valid();
  Comparability best{1, 0, true};
  auto consider = [&](Real alpha, Real ratio) {
    if (ratio > best.value) {
      best.value = ratio;
      best.attaining_alpha = alpha;
    }
  };

  auto grid = union_breakpoints(cuts(sigma1), cuts(sigma2));
  grid.pop_back();
  const bool exact = sigma1.is_step() && sigma2.is_step();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    consider(grid[i], tail_ratio(sigma1, sigma2, grid[i]));
    if (exact || i + 1 == grid.size()) continue;
    // Interior maximum of a ratio of concave tails: golden-section search.
    Real lo = grid[i];
    Real hi = grid[i + 1];
    const Real g = (std::sqrt(Real{5}) - 1) / 2;
    for (int it = 0; it < 80 && hi - lo > 0; ++it) {
      const Real m1 = hi - g * (hi - lo);
      const Real m2 = lo + g * (hi - lo);
      if (tail_ratio(sigma1, sigma2, m1) < tail_ratio(sigma1, sigma2, m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    const Real mid = (lo + hi) / 2;
    consider(mid, tail_ratio(sigma1, sigma2, mid));
  }

  // S_i(a) ~ c_i (1-a)^{o_i}: the ratio tends to 0, c2/c1 or inf.
  const auto a1 = sigma1.asymptotics();
  const auto a2 = sigma2.asymptotics();
  if (!a1 || !a2) {
    best.limit_verified = false;
    return best;
  }
  Real limit = 0;
  if (a2->order < a1->order) {
    limit = kInf;
  } else if (a2->order == a1->order) {
    limit = a2->coefficient / a1->coefficient;
  }
  consider(1, limit);
  return best;
}

Real sharpness_witness(const Spectrum& sigma1, const Spectrum& sigma2, Real p_a) {
  if (!(p_a > 0 && p_a < 1)) throw std::domain_error("sharpness_witness: pA must lie in (0,1)");
  return tail_ratio(sigma1, sigma2, p_a);
}

Real identity_norm(const SpectrumSet& s1, const SpectrumSet& s2) {
  Real worst = 0;
  for (const auto& target : s2.members()) {
    Real cheapest = kInf;
    for (const auto& source : s1.members()) {
      cheapest = std::min(cheapest, comparability_constant(source, target).value);
    }
    worst = std::max(worst, cheapest);
  }
  return worst;
}

SandwichReport avar_sandwich_check(Real alpha1, Real alpha2, const StepQuantile& d) {
  if (!(alpha1 >= 0 && alpha1 <= alpha2 && alpha2 < 1)) {
    throw std::domain_error("avar_sandwich_check: need 0 <= alpha1 <= alpha2 < 1");
  }
  const StepQuantile y = abs_value(d);
  SandwichReport r{};
  r.lower = avar(alpha1, y);
  r.middle = avar(alpha2, y);
  r.factor = (1 - alpha1) / (1 - alpha2);
  r.upper = r.factor * r.lower;
  const Real slack = kTol * std::max(Real{1}, r.upper);
  r.holds = r.lower <= r.middle + slack && r.middle <= r.upper + slack;
  return r;
}

}  // namespace riskspace
