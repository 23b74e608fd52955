#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "riskspace/distmodel.hpp"
#include "riskspace/spectrum.hpp"

namespace riskspace {

/// Riemann zeta for s > 1.
Real zeta(Real s);

/// Truncation of Y = sigma(U)^{q-1} tau(U), tau = n on the n-th band
/// [t_{n-1}, t_n), whose bands carry sigma^q-mass proportional to n^{-(p+1)}.
/// Y has finite spectral risk but E Y^p diverges like the harmonic series.
struct LpEscape {
  Real q;
  Real p;
  Real k;  // ||sigma||_q^q
  int requested_depth;
  /// Bands actually built. Deep bands sit closer to 1 than the scalar type
  /// resolves; they are left at 0, which only lowers the risk.
  int represented_depth;
  std::vector<Real> band_edges;  // t_0 = 0, ..., t_represented
  StepQuantile variable;         // band values replaced by their cell averages
  Real risk;                     // spectral risk of the represented truncation
  Real predicted_risk;           // k/zeta(p+1) sum_{n <= represented} n^{-p}, the coupled band integral
  Real limit_risk;               // k zeta(p)/zeta(p+1)
  Real lp_partial_p;             // k/zeta(p+1) sum_{n <= requested} 1/n
};

/// Throws std::domain_error for q outside (1, inf) or sigma not in L^q, and
/// std::runtime_error if not even the first band can be placed.
LpEscape lp_escape(const Spectrum& sigma, Real q, int depth);

/// Y = tau(U) with tau = n on [t_{n-1}, t_n) and S(t_n) <= 2^{-n}: bounded
/// risk, unbounded values.
struct LinfEscape {
  std::vector<Real> band_edges;
  StepQuantile variable;
  Real risk;
  Real risk_bound;  // sum_{n <= N} n 2^{1-n}
  Real esssup;
};

/// Throws std::runtime_error when S reaches 0 before 1 or the next band edge
/// is not representable.
LinfEscape linf_escape(const Spectrum& sigma, int depth);

using QuantileRule = std::function<Real(Real)>;

/// F^{-1}(u) = 1/(1-u): infinite mean, every dyadic cell contributes 1/2.
QuantileRule heavy_tail_rule();

struct DivergenceRow {
  Real n;
  Real l1;
  Real sigma_norm;
};

struct DivergenceDemo {
  std::vector<DivergenceRow> rows;  // n = 1, 2, 4, ...
  bool exceeded;                    // some row has l1 > target
  bool vacuous;                     // the truncations stopped growing
};

/// Rows for Y_n = min(n, |Y|) with Y the dyadic discretization of the rule
/// (value rule(1 - 2^-k) on [1 - 2^-k, 1 - 2^-(k+1))).
DivergenceDemo l1_divergence_demo(const QuantileRule& rule, const Spectrum& sigma, Real target,
                                  int max_doublings = 62);
DivergenceDemo l1_divergence_demo(const StepQuantile& d, const Spectrum& sigma, Real target,
                                  int max_doublings = 62);

struct StepDensityApprox {
  StepQuantile step;  // s, as a nondecreasing function of U
  Real error;         // ||Y - s(U)||_sigma, computed exactly
  Real t0;            // s is constant on [0, t0)
  Real t1;            // and on [t1, 1)
  std::size_t steps;
};

/// Coarsens the quantile of Y into a step function s with ||Y - s(U)||_sigma
/// < eps: the bottom and top are clipped with budget eps/3 each, the middle is
/// merged into blocks whose spread keeps the pointwise error under a level
/// costing eps/3. Throws std::domain_error for eps <= 0.
StepDensityApprox step_density_approx(const Spectrum& sigma, const StepQuantile& d, Real eps);

}  // namespace riskspace
