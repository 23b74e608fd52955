#include "riskspace/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "riskspace/riskcore.hpp"

namespace riskspace {
namespace {

// \int_a^b sigma^r for a cell on which sigma is either constant (step kinds,
// after splitting at the breakpoints) or smooth.
Real power_mass(const Spectrum& sigma, Real r, Real a, Real b) {
  if (sigma.is_step()) {
    const Real v = sigma.density(a);
    return v > 0 ? std::pow(v, r) * (b - a) : Real{0};
  }
  if (sigma.kind() == SpectrumKind::power_sqrt) {
    const Real x = 1 - r / 2;
    return std::pow(Real{2}, -r) * (std::pow(1 - a, x) - std::pow(1 - b, x)) / x;
  }
  return sigma.power_integral(r, b) - sigma.power_integral(r, a);
}

// Smallest t in [lo, 1] with f(t) satisfying pred, f monotone.
template <class Pred>
Real bisect(Real lo, Pred pred) {
  Real hi = 1;
  for (int it = 0; it < 400; ++it) {
    const Real mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Cell edges inside [a, b): sigma's breakpoints for step kinds, otherwise a
// geometric split of 1-u with ratio 2^(1/4).
std::vector<Real> band_cells(const Spectrum& sigma, Real a, Real b) {
  std::vector<Real> edges{a};
  if (sigma.is_step()) {
    for (Real s : sigma.breakpoints()) {
      if (s > a && s < b) edges.push_back(s);
    }
  } else {
    const Real step = std::pow(Real{2}, Real{-0.25});
    for (Real rest = (1 - a) * step; 1 - rest < b; rest *= step) {
      const Real u = 1 - rest;
      if (u > edges.back()) edges.push_back(u);
    }
  }
  edges.push_back(b);
  return edges;
}

Real harmonic(int n, Real s) {
  Real total = 0;
  for (int j = n; j >= 1; --j) total += std::pow(Real(j), -s);
  return total;
}

}  // namespace

Real zeta(Real s) {
  if (!(s > 1)) throw std::domain_error("zeta: s must exceed 1");
  // Direct sum to N-1, Euler-Maclaurin for the rest.
  constexpr int n = 32;
  Real total = 0;
  for (int j = n - 1; j >= 1; --j) total += std::pow(Real(j), -s);
  const Real big_n = n;
  total += std::pow(big_n, 1 - s) / (s - 1) + std::pow(big_n, -s) / 2;
  static constexpr Real bernoulli[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66};
  Real rising = s;  // s (s+1) ... (s+2k-2)
  Real factorial = 2;
  for (int k = 1; k <= 5; ++k) {
    total += bernoulli[k - 1] / factorial * rising * std::pow(big_n, -s - 2 * k + 1);
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    factorial *= (2 * k + 1) * (2 * k + 2);
  }
  return total;
}

LpEscape lp_escape(const Spectrum& sigma, Real q, int depth) {
  if (!(q > 1) || std::isinf(q)) throw std::domain_error("lp_escape: q must lie in (1, inf)");
  if (depth < 1) throw std::domain_error("lp_escape: depth must be >= 1");
  sigma.require_valid();
  const Real k = sigma.power_integral(q, 1);
  if (!std::isfinite(k)) throw std::domain_error("lp_escape: sigma is not in L^q");
  const Real p = q / (q - 1);
  const Real zeta_p1 = zeta(p + 1);
  const Real scale = k / zeta_p1;

  std::vector<Real> edges{0};
  Real cumulative = 0;
  for (int n = 1; n <= depth; ++n) {
    cumulative += scale * std::pow(Real(n), -(p + 1));
    const Real target = cumulative;
    const Real t = bisect(edges.back(), [&](Real u) { return sigma.power_integral(q, u) >= target; });
    if (t >= 1 || t <= edges.back() || std::fabs(sigma.power_integral(q, t) - target) >= 1e-10L) break;
    edges.push_back(t);
  }
  const int represented = static_cast<int>(edges.size()) - 1;
  if (represented == 0) throw std::runtime_error("lp_escape: root finding failed for the first band");

  // Replacing Y by its average on each cell can only lower the risk, so the
  // built variable stays below the exact truncation.
  std::vector<Atom> atoms{{0, 1 - edges.back()}};
  for (int n = 1; n <= represented; ++n) {
    const auto cells = band_cells(sigma, edges[n - 1], edges[n]);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      const Real len = cells[i + 1] - cells[i];
      if (!(len > 0)) continue;
      const Real avg = power_mass(sigma, q - 1, cells[i], cells[i + 1]) / len;
      atoms.push_back({n * avg, len});
    }
  }

  LpEscape out{q, p, k, depth, represented, edges, StepQuantile::from_atoms(std::move(atoms)), 0, 0, 0, 0};
  out.risk = spectral_risk(sigma, out.variable);
  out.predicted_risk = scale * harmonic(represented, p);
  out.limit_risk = k * zeta(p) / zeta_p1;
  out.lp_partial_p = scale * harmonic(depth, 1);
  return out;
}

LinfEscape linf_escape(const Spectrum& sigma, int depth) {
  if (depth < 1) throw std::domain_error("linf_escape: depth must be >= 1");
  sigma.require_valid();
  std::vector<Real> edges{0};
  for (int n = 1; n <= depth; ++n) {
    const Real target = std::ldexp(Real{1}, -n);
    const Real t = bisect(edges.back(), [&](Real u) { return sigma.tail(u) <= target; });
    if (t >= 1 || t <= edges.back()) {
      throw std::runtime_error("linf_escape: construction stalls at band " + std::to_string(n));
    }
    edges.push_back(t);
  }
  std::vector<Atom> atoms{{0, 1 - edges.back()}};
  Real bound = 0;
  for (int n = 1; n <= depth; ++n) {
    atoms.push_back({Real(n), edges[n] - edges[n - 1]});
    bound += n * std::ldexp(Real{1}, 1 - n);
  }
  LinfEscape out{edges, StepQuantile::from_atoms(std::move(atoms)), 0, bound, 0};
  out.risk = spectral_risk(sigma, out.variable);
  out.esssup = out.variable.max_value();
  return out;
}

QuantileRule heavy_tail_rule() {
  return [](Real u) { return 1 / (1 - u); };
}

namespace {

template <class Truncate>
DivergenceDemo run_divergence(const Spectrum& sigma, Real target, int max_doublings, Truncate truncate) {
  sigma.require_valid();
  DivergenceDemo demo{{}, false, false};
  for (int j = 0; j <= max_doublings; ++j) {
    const Real n = std::ldexp(Real{1}, j);
    const StepQuantile y = truncate(n);
    const DivergenceRow row{n, lp_norm(y, 1), sigma_norm(sigma, y)};
    if (!demo.rows.empty() && row.l1 <= demo.rows.back().l1 + kTol) {
      demo.vacuous = true;
      demo.rows.push_back(row);
      break;
    }
    demo.rows.push_back(row);
    if (row.l1 > target) {
      demo.exceeded = true;
      break;
    }
  }
  return demo;
}

}  // namespace

DivergenceDemo l1_divergence_demo(const QuantileRule& rule, const Spectrum& sigma, Real target,
                                  int max_doublings) {
  return run_divergence(sigma, target, max_doublings, [&](Real n) {
    // Cells whose value reaches n are all truncated to n, so the infinite
    // dyadic discretization is represented exactly by a finite prefix.
    std::vector<Atom> atoms;
    int cell = 0;
    for (; cell < 62; ++cell) {
      const Real v = std::min(n, std::fabs(rule(1 - std::ldexp(Real{1}, -cell))));
      if (v >= n) break;
      atoms.push_back({v, std::ldexp(Real{1}, -cell - 1)});
    }
    atoms.push_back({std::min(n, std::fabs(rule(1 - std::ldexp(Real{1}, -cell)))), std::ldexp(Real{1}, -cell)});
    return StepQuantile::from_atoms(std::move(atoms));
  });
}

DivergenceDemo l1_divergence_demo(const StepQuantile& d, const Spectrum& sigma, Real target,
                                  int max_doublings) {
  const StepQuantile y = abs_value(d);
  return run_divergence(sigma, target, max_doublings, [&](Real n) {
    auto atoms = y.atoms();
    for (auto& a : atoms) a.value = std::min(a.value, n);
    return StepQuantile::from_atoms(std::move(atoms));
  });
}

namespace {

// ||Y - s(U)||_sigma with Y and s both constant on the cells of d.
Real residual_norm(const Spectrum& sigma, const StepQuantile& d, const std::vector<Real>& s) {
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < d.size(); ++k) atoms.push_back({std::fabs(d.values()[k] - s[k]), d.mass(k)});
  return sigma_norm(sigma, StepQuantile::from_atoms(std::move(atoms)));
}

// Largest index in [lo, hi] where ok() holds, ok monotone decreasing and ok(lo) true.
template <class Ok>
std::size_t last_true(std::size_t lo, std::size_t hi, Ok ok) {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace

StepDensityApprox step_density_approx(const Spectrum& sigma, const StepQuantile& d, Real eps) {
  if (!(eps > 0)) throw std::domain_error("step_density_approx: eps must be positive");
  sigma.require_valid();
  const auto v = d.values();
  const std::size_t m = d.size();
  const Real budget = eps / 3 * (1 - 1e-9L);

  auto clip_bottom = [&](std::size_t k0) {
    std::vector<Real> s(v.begin(), v.end());
    for (std::size_t j = 0; j < k0; ++j) s[j] = v[k0];
    return residual_norm(sigma, d, s);
  };
  const std::size_t k0 = last_true(0, m - 1, [&](std::size_t k) { return clip_bottom(k) < budget; });

  auto clip_top = [&](std::size_t k1) {
    std::vector<Real> s(v.begin(), v.end());
    for (std::size_t j = k1 + 1; j < m; ++j) s[j] = v[k1];
    return residual_norm(sigma, d, s);
  };
  // Search over r = m-1-k1 so that the predicate is monotone decreasing.
  const std::size_t r = last_true(0, m - 1 - k0, [&](std::size_t r) { return clip_top(m - 1 - r) < budget; });
  const std::size_t k1 = m - 1 - r;

  std::vector<Real> s(m);
  for (std::size_t j = 0; j < k0; ++j) s[j] = v[k0];
  for (std::size_t j = k1 + 1; j < m; ++j) s[j] = v[k1];
  // Pointwise error below delta on the middle costs at most delta S(1 - mass).
  const Real middle_mass = d.upper(k1) - d.lower(k0);
  const Real delta = budget / sigma.tail(1 - middle_mass);
  for (std::size_t j = k0; j <= k1;) {
    std::size_t e = j;
    while (e <= k1 && v[e] - v[j] < delta) s[e++] = v[j];
    j = e;
  }

  std::vector<Real> bps(d.breakpoints().begin(), d.breakpoints().end());
  StepDensityApprox out{StepQuantile(bps, s), residual_norm(sigma, d, s), d.lower(k0), d.upper(k1), 0};
  out.steps = out.step.size();
  return out;
}

}  // namespace riskspace
