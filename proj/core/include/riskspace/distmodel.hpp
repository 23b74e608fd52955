#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "riskspace/types.hpp"

namespace riskspace {

class Spectrum;

/// A point mass used to assemble a distribution.
struct Atom {
  Real value;
  Real mass;
};

/// A random variable given by its left-continuous quantile function, a
/// nondecreasing step function on [0,1). The value on [u_{k-1}, u_k) is v_k.
///
/// Canonical form: breakpoints strictly increasing from 0 to 1, values
/// nondecreasing with adjacent equal values merged.
class StepQuantile {
 public:
  /// Throws std::invalid_argument when the breakpoints or values violate the
  /// canonical-form invariants. Values that decrease by no more than kTol are
  /// clamped, adjacent equal values are merged.
  StepQuantile(std::vector<Real> breakpoints, std::vector<Real> values);

  static StepQuantile constant(Real c);

  /// Builds the distribution of a finite mixture of point masses. Masses are
  /// normalized by their total, zero masses are dropped, values within kTol
  /// are merged.
  static StepQuantile from_atoms(std::vector<Atom> atoms);

  std::span<const Real> breakpoints() const { return breakpoints_; }
  std::span<const Real> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  Real lower(std::size_t k) const { return breakpoints_[k]; }
  Real upper(std::size_t k) const { return breakpoints_[k + 1]; }
  Real mass(std::size_t k) const { return breakpoints_[k + 1] - breakpoints_[k]; }

  Real min_value() const { return values_.front(); }
  /// esssup, the limit of the quantile as p -> 1.
  Real max_value() const { return values_.back(); }
  Real mean() const;
  bool is_zero() const { return size() == 1 && values_[0] == 0; }

  std::vector<Atom> atoms() const;
  StepQuantile shifted(Real c) const;
  /// Distribution of lambda*Y for any real lambda.
  StepQuantile scaled(Real lambda) const;

  friend bool operator==(const StepQuantile&, const StepQuantile&) = default;

 private:
  std::vector<Real> breakpoints_;
  std::vector<Real> values_;
};

/// Weighted empirical distribution. Missing weights mean uniform weights.
/// Throws std::invalid_argument on empty input, non-positive weight or a
/// length mismatch.
StepQuantile from_samples(std::span<const Real> values, std::span<const Real> weights = {});

/// Left-continuous quantile, p in [0,1).
Real quantile(const StepQuantile& d, Real p);

/// Distribution of |Y|.
StepQuantile abs_value(const StepQuantile& d);

/// (E|Y|^p)^(1/p); p = kInf gives max |v_k|.
Real lp_norm(const StepQuantile& d, Real p);

/// Upper partial integral of the quantile, \int_alpha^1 F^{-1}(u) du.
Real tail_integral(const StepQuantile& d, Real alpha);

/// Sorted union of two breakpoint lists on [0,1], duplicates removed.
std::vector<Real> union_breakpoints(std::span<const Real> a, std::span<const Real> b);

/// Weighted joint observations (y, z, w) used for pairings E[YZ] and for
/// binary properties that need a joint law rather than two marginals.
class PairedSample {
 public:
  struct Row {
    Real y;
    Real z;
    Real w;
  };

  /// Requires positive weights summing to 1 within kTol.
  explicit PairedSample(std::vector<Row> rows);

  std::span<const Row> rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  StepQuantile y_marginal() const;
  StepQuantile z_marginal() const;
  /// Distribution of f(Y, Z) under the joint law.
  StepQuantile combine(const std::function<Real(Real, Real)>& f) const;

 private:
  std::vector<Row> rows_;
};

/// Couples Y with sigma(U) comonotonically: rows are the cells of the common
/// refinement of the quantile breakpoints and the spectrum breakpoints (a
/// geometric mesh toward 1 for non-step spectra). z is the sigma-average on
/// the cell, so the pairing equals \int F^{-1} sigma exactly.
PairedSample comonotone_pair(const StepQuantile& d, const Spectrum& sigma);

}  // namespace riskspace
