#pragma once

#include "riskspace/distmodel.hpp"
#include "riskspace/kusuoka.hpp"
#include "riskspace/spectrum.hpp"

namespace riskspace {

struct Comparability {
  Real value;            // >= 1, kInf when S1 vanishes faster than S2 at 1
  Real attaining_alpha;  // 1 stands for the limit a -> 1
  bool limit_verified;   // false when either spectrum lacks tail asymptotics
};

/// c = sup_a S2(a) / S1(a), the norm of the inclusion L_sigma1 -> L_sigma2
/// (infinite when there is none). For step spectra both tails are linear
/// between the union of breakpoints, so the ratio is monotone on each piece
/// and the endpoints plus the a -> 1 limit are exact.
Comparability comparability_constant(const Spectrum& sigma1, const Spectrum& sigma2);

/// S2(pA) / S1(pA): the norm ratio attained by the indicator of an event of
/// probability 1 - pA. pA in (0,1).
Real sharpness_witness(const Spectrum& sigma1, const Spectrum& sigma2, Real p_a);

/// max over sigma2 in S2 of min over sigma1 in S1 of c(sigma1, sigma2).
Real identity_norm(const SpectrumSet& s1, const SpectrumSet& s2);

struct SandwichReport {
  Real lower;   // AVaR_a1(|Y|)
  Real middle;  // AVaR_a2(|Y|)
  Real upper;   // (1-a1)/(1-a2) AVaR_a1(|Y|)
  Real factor;  // (1-a1)/(1-a2)
  bool holds;
};

/// Checks AVaR_a1(|Y|) <= AVaR_a2(|Y|) <= (1-a1)/(1-a2) AVaR_a1(|Y|) for
/// 0 <= a1 <= a2 < 1. Throws std::domain_error when the levels are out of order.
SandwichReport avar_sandwich_check(Real alpha1, Real alpha2, const StepQuantile& d);

}  // namespace riskspace
