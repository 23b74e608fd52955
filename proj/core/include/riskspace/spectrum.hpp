#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskspace/types.hpp"

namespace riskspace {

enum class SpectrumKind { step, avar, power_sqrt, general };

/// Behaviour of the tail weight as alpha -> 1: S(alpha) ~ coefficient * (1-alpha)^order.
/// order == 1 means sigma is bounded with sigma(1-) == coefficient; order < 1
/// means sigma is unbounded.
struct TailAsymptotics {
  Real order;
  Real coefficient;
};

/// A spectrum given by closed-form density and tail evaluators.
struct GeneralSpectrum {
  std::string name;
  std::function<Real(Real)> density;  // u -> sigma(u), u in [0,1)
  std::function<Real(Real)> tail;     // alpha -> \int_alpha^1 sigma
  /// sigma is in L^q exactly for q < integrability (kInf when bounded).
  Real integrability = kInf;
  std::optional<TailAsymptotics> asymptotics;
};

struct Violation {
  std::string property;  // structure | nonnegativity | monotonicity | normalization
  Real witness;          // point u where the violation was observed
  std::string detail;
};

/// A spectral weight function sigma on [0,1): nonnegative, nondecreasing and
/// of unit integral. Construction never throws for property violations; they
/// are collected once and reported by validate(). Operations that need a
/// valid spectrum call require_valid().
class Spectrum {
 public:
  /// Step function with breakpoints 0 = s_0 < ... < s_n = 1 and value c_k on
  /// [s_{k-1}, s_k). An integral within kNormTol of 1 is rescaled to exactly 1.
  static Spectrum step(std::vector<Real> breakpoints, std::vector<Real> values);
  /// The Average Value-at-Risk spectrum, 1/(1-alpha) on [alpha, 1).
  static Spectrum avar(Real alpha);
  /// sigma(u) = 1 / (2 sqrt(1-u)).
  static Spectrum power_sqrt();
  static Spectrum general(GeneralSpectrum g);
  /// sigma == 1, the expectation.
  static Spectrum constant() { return avar(0); }

  SpectrumKind kind() const { return kind_; }
  /// Step and AVaR spectra: piecewise constant with finitely many cells.
  bool is_step() const { return kind_ == SpectrumKind::step || kind_ == SpectrumKind::avar; }
  std::string describe() const;

  /// Cell boundaries (step-like kinds only, empty otherwise).
  std::span<const Real> breakpoints() const { return breakpoints_; }
  std::span<const Real> cell_values() const { return values_; }
  Real avar_level() const { return alpha_; }

  /// sigma(u) for u in [0,1).
  Real density(Real u) const;
  /// sigma(1-), kInf when unbounded.
  Real upper_value() const;
  /// S(alpha) = \int_alpha^1 sigma.
  Real tail(Real alpha) const;
  /// \int_a^b sigma for 0 <= a <= b <= 1.
  Real mass(Real a, Real b) const;
  /// \int_0^t sigma^q, q >= 1.
  Real power_integral(Real q, Real t) const;
  /// Tail behaviour at 1 if known.
  std::optional<TailAsymptotics> asymptotics() const;
  /// sigma in L^q iff q < integrability().
  Real integrability() const;

  const std::vector<Violation>& violations() const { return violations_; }
  bool valid() const { return violations_.empty(); }
  /// Throws std::invalid_argument listing the violations.
  void require_valid() const;
  /// Factor applied to the raw step values to reach unit integral (1 if none).
  Real normalization_factor() const { return normalization_factor_; }

 private:
  Spectrum() = default;
  void check_step();
  void check_general();
  void build_tails();

  SpectrumKind kind_ = SpectrumKind::step;
  std::vector<Real> breakpoints_;
  std::vector<Real> values_;
  std::vector<Real> tails_;  // tails_[k] = S(breakpoints_[k])
  Real alpha_ = 0;
  std::optional<GeneralSpectrum> general_;
  std::vector<Violation> violations_;
  Real normalization_factor_ = 1;
};

/// Diagnostics; empty iff sigma is a valid spectrum.
std::vector<Violation> validate(const Spectrum& sigma);

/// S(alpha) for alpha in [0,1]. Throws std::domain_error outside.
Real tail_weight(const Spectrum& sigma, Real alpha);

/// ||sigma||_q for q in [1, kInf]; kInf when sigma is not in L^q.
Real lq_norm(const Spectrum& sigma, Real q);

struct StepApproximation {
  Spectrum spectrum;
  Real renormalization;  // factor applied after taking cell infima
};

/// Nondecreasing step under-approximation of sigma on the n-cell geometric
/// mesh [1-2^-k, 1-2^-(k+1)), renormalized to unit integral. Step spectra are
/// returned unchanged.
StepApproximation step_approx(const Spectrum& sigma, int n);

/// Geometric mesh 1 - 2^-k, k = 1..count, used wherever a non-step spectrum
/// needs a discretization toward 1.
std::vector<Real> geometric_mesh(int count);

}  // namespace riskspace
