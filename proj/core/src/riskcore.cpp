#include "riskspace/riskcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace riskspace {
namespace {

// Grid on which both the quantile and (for step spectra) sigma are constant.
std::vector<Real> refinement(const StepQuantile& d, const Spectrum& sigma) {
  if (sigma.is_step()) return union_breakpoints(d.breakpoints(), sigma.breakpoints());
  return {d.breakpoints().begin(), d.breakpoints().end()};
}

}  // namespace

std::string_view to_string(RiskMethod m) {
  switch (m) {
    case RiskMethod::quantile_integral:
      return "quantile-integral";
    case RiskMethod::cdf_tail_integral:
      return "cdf-tail-integral";
    case RiskMethod::comonotone_sup:
      return "comonotone-sup";
  }
  return "unknown";
}

Real spectral_risk(const Spectrum& sigma, const StepQuantile& d) {
  sigma.require_valid();
  Real total = 0;
  if (sigma.is_step()) {
    const auto grid = refinement(d, sigma);
    const auto sb = sigma.breakpoints();
    const auto sv = sigma.cell_values();
    std::size_t k = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const Real a = grid[i];
      while (d.upper(k) <= a) ++k;
      while (sb[j + 1] <= a) ++j;
      total += sv[j] * d.values()[k] * (grid[i + 1] - a);
    }
  } else {
    for (std::size_t k = 0; k < d.size(); ++k) {
      const Real v = d.values()[k];
      if (v != 0) total += v * sigma.mass(d.lower(k), d.upper(k));
    }
  }
  if (!std::isfinite(total)) return kInf;
  return total;
}

Real spectral_risk_via_cdf(const Spectrum& sigma, const StepQuantile& d) {
  sigma.require_valid();
  const auto v = d.values();
  Real total = v[0];
  for (std::size_t k = 0; k + 1 < d.size(); ++k) total += (v[k + 1] - v[k]) * sigma.tail(d.upper(k));
  if (!std::isfinite(total)) return kInf;
  return total;
}

Real avar(Real alpha, const StepQuantile& d) {
  if (!(alpha >= 0 && alpha <= 1)) throw std::domain_error("avar: alpha must lie in [0,1]");
  if (alpha == 1) return d.max_value();
  return tail_integral(d, alpha) / (1 - alpha);
}

Real sigma_norm(const Spectrum& sigma, const StepQuantile& d) {
  return spectral_risk(sigma, abs_value(d));
}

Real sigma_norm_via_cdf(const Spectrum& sigma, const StepQuantile& d) {
  // The layer-cake integral starts at y = 0; prepending an empty level keeps
  // the formula identical to the signed one.
  return spectral_risk_via_cdf(sigma, abs_value(d));
}

RepresentationCheck representation_sup_check(const Spectrum& sigma, const StepQuantile& d,
                                             std::uint64_t seed, int couplings) {
  sigma.require_valid();
  // Pieces on which Y is constant. A coupling is a permutation of the pieces
  // laid out again contiguously; U' = T(U) stays uniform.
  std::vector<Real> grid = refinement(d, sigma);
  if (!sigma.is_step()) grid = union_breakpoints(grid, geometric_mesh(60));
  const std::size_t n = grid.size() - 1;
  std::vector<Real> y(n);
  std::vector<Real> len(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (d.upper(k) <= grid[i]) ++k;
    y[i] = d.values()[k];
    len[i] = grid[i + 1] - grid[i];
  }

  auto evaluate = [&](const std::vector<std::size_t>& order) {
    Real total = 0;
    Real at = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t idx = order[i];
      const Real end = (i + 1 == order.size()) ? Real{1} : at + len[idx];
      total += y[idx] * sigma.mass(at, end);
      at = end;
    }
    return total;
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RepresentationCheck out{};
  const Real comonotone = evaluate(order);
  out.report = {comonotone, RiskMethod::comonotone_sup,
                std::fabs(comonotone - spectral_risk(sigma, d))};

  std::vector<std::size_t> reversed(order.rbegin(), order.rend());
  out.anti_comonotone = evaluate(reversed);

  std::mt19937_64 rng(seed);
  out.max_shuffled = -kInf;
  out.dominated = out.anti_comonotone <= comonotone + kTol;
  for (int c = 0; c < couplings; ++c) {
    std::shuffle(order.begin(), order.end(), rng);
    const Real value = evaluate(order);
    out.shuffled.push_back(value);
    out.max_shuffled = std::max(out.max_shuffled, value);
    if (value > comonotone + kTol) out.dominated = false;
  }
  return out;
}

SemideviationResult semideviation(const StepQuantile& d, Real p, Real lambda) {
  if (!(p >= 1) || std::isinf(p)) throw std::domain_error("semideviation: p must lie in [1, inf)");
  if (!(lambda > 0 && lambda <= 1)) throw std::domain_error("semideviation: lambda must lie in (0,1]");
  const Real mean = d.mean();
  auto atoms = d.atoms();
  for (auto& a : atoms) a.value = std::max(a.value - mean, Real{0});
  const Real upper = lp_norm(StepQuantile::from_atoms(std::move(atoms)), p);
  return {mean + lambda * upper, (1 + lambda) * lp_norm(d, p)};
}

}  // namespace riskspace
