#pragma once

#include <vector>

#include "riskspace/distmodel.hpp"
#include "riskspace/spectrum.hpp"

namespace riskspace {

/// Outcome of the check AVaR_a(|Z|) <= eta S(a) / (1-a) for all a in [0,1).
struct DominanceCertificate {
  bool holds;
  Real witness_alpha;  // where the margin is smallest; 1 stands for the limit a -> 1
  Real margin;         // eta S(a)/(1-a) - AVaR_a(|Z|) at the witness
};

/// Second-order dominance |Z| <= eta sigma. Both sides are piecewise linear
/// (step spectra) after multiplying by 1-a, so the margin is checked exactly on
/// the union of breakpoints plus the limit a -> 1. For non-step spectra the
/// sign of the margin is still exact (the ratio (1-a)AVaR_a / S is
/// quasiconvex between quantile breakpoints); its magnitude is taken on a
/// geometric mesh.
DominanceCertificate dominates(const StepQuantile& z, const Spectrum& sigma, Real eta);

struct DualNorm {
  Real value;
  Real attaining_alpha;  // 1 stands for the limit a -> 1
  bool limit_verified;   // false when a general spectrum gives no tail asymptotics
};

/// Gauge norm ||Z||*_sigma = sup_a (1-a) AVaR_a(|Z|) / S(a).
DualNorm dual_norm(const StepQuantile& z, const Spectrum& sigma);

/// ||1_A||*_sigma = P(A) / S(1 - P(A)) for P(A) in (0,1].
Real indicator_dual_norm(const Spectrum& sigma, Real p_a);

/// sup_u F^{-1}_{|Z|}(u) / sigma(u) with 0/0 = 0 and x/0 = inf. Dominates the
/// dual norm but is not itself a norm.
Real dual_upper_bound(const StepQuantile& z, const Spectrum& sigma);

/// Pairs Y with Z_Y = sigma(U) sign(Y), U comonotone with |Y| (sign(0) = +1).
/// E[Y Z_Y] = ||Y||_sigma and ||Z_Y||* = 1.
PairedSample hahn_banach_witness(const Spectrum& sigma, const StepQuantile& d);

/// E[YZ] = sum_i w_i y_i z_i.
Real pairing(const PairedSample& p);

/// Candidate levels for the sup in the gauge norm: 0, the quantile's and the
/// spectrum's breakpoints below 1, and a geometric mesh for non-step spectra.
std::vector<Real> dual_check_points(const StepQuantile& abs_z, const Spectrum& sigma);

}  // namespace riskspace
