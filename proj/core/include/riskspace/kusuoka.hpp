#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "riskspace/distmodel.hpp"
#include "riskspace/spectrum.hpp"

namespace riskspace {

/// A discrete probability measure on [0,1] mixing AVaR levels. An atom at 1
/// stands for the esssup.
class KusuokaMeasure {
 public:
  struct Atom {
    Real level;
    Real weight;
  };

  /// Levels strictly increasing in [0,1], weights positive, total 1 within
  /// kNormTol. Throws std::invalid_argument otherwise.
  explicit KusuokaMeasure(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  bool has_atom_at_one() const { return !atoms_.empty() && atoms_.back().level == 1; }

 private:
  std::vector<Atom> atoms_;
};

/// A finite, nonempty family of valid spectra defining rho_S = max rho_sigma.
class SpectrumSet {
 public:
  explicit SpectrumSet(std::vector<Spectrum> members);

  std::span<const Spectrum> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Spectrum& operator[](std::size_t i) const { return members_[i]; }

 private:
  std::vector<Spectrum> members_;
};

/// Mixing measure of a step spectrum: sigma(0) at level 0 plus (1-s) times the
/// jump of sigma at each breakpoint s. Throws for non-step spectra.
KusuokaMeasure mu_from_sigma(const Spectrum& sigma);

/// sigma_mu(b) = sum_{a_i <= b} w_i / (1 - a_i). Rejects measures with an atom
/// at 1.
Spectrum sigma_from_mu(const KusuokaMeasure& mu);

/// sum_i w_i AVaR_{a_i}(Y).
Real mixture_risk(const KusuokaMeasure& mu, const StepQuantile& d);

struct SupRisk {
  Real value;
  std::size_t index;  // lowest index attaining the maximum
};

SupRisk sup_risk(const SpectrumSet& set, const StepQuantile& d);

/// ||Y||_S = max_sigma ||Y||_sigma.
Real set_norm(const SpectrumSet& set, const StepQuantile& d);

}  // namespace riskspace
