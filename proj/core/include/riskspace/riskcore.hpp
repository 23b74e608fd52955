#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "riskspace/distmodel.hpp"
#include "riskspace/spectrum.hpp"

namespace riskspace {

enum class RiskMethod { quantile_integral, cdf_tail_integral, comonotone_sup };

std::string_view to_string(RiskMethod m);

struct RiskReport {
  Real value;
  RiskMethod method;
  Real residual;  // absolute discrepancy against the other evaluation route
};

/// rho_sigma(Y) = \int_0^1 sigma(u) F^{-1}(u) du, evaluated segment by segment
/// on the common refinement (step spectra) or with closed-form sigma-masses.
/// Returns kInf if the sum overflows.
Real spectral_risk(const Spectrum& sigma, const StepQuantile& d);

/// The same functional through the cdf: v_1 + sum_k (v_{k+1} - v_k) S(u_k).
Real spectral_risk_via_cdf(const Spectrum& sigma, const StepQuantile& d);

/// Average Value-at-Risk at level alpha in [0,1]; alpha = 1 gives esssup.
Real avar(Real alpha, const StepQuantile& d);

/// ||Y||_sigma = rho_sigma(|Y|).
Real sigma_norm(const Spectrum& sigma, const StepQuantile& d);

/// ||Y||_sigma = \int_0^inf S(F_{|Y|}(y)) dy.
Real sigma_norm_via_cdf(const Spectrum& sigma, const StepQuantile& d);

struct RepresentationCheck {
  RiskReport report;           // comonotone value, residual vs spectral_risk
  Real anti_comonotone;        // E[Y sigma(1-U)] with U comonotone to Y
  Real max_shuffled;           // largest value over the random couplings
  std::vector<Real> shuffled;  // one value per random coupling
  bool dominated;              // every coupling <= comonotone value + kTol
};

/// E[Y sigma(U)] over the comonotone coupling and over `couplings` random
/// measure-preserving rearrangements of U (seeded).
RepresentationCheck representation_sup_check(const Spectrum& sigma, const StepQuantile& d,
                                             std::uint64_t seed = 0, int couplings = 64);

struct SemideviationResult {
  Real value;  // E[Y] + lambda ||(Y - E[Y])_+||_p
  Real bound;  // (1 + lambda) ||Y||_p, an upper bound when Y >= 0
};

/// p-semideviation risk measure, p >= 1 and 0 < lambda <= 1.
SemideviationResult semideviation(const StepQuantile& d, Real p, Real lambda);

}  // namespace riskspace
