#include "riskspace/kusuoka.hpp"

#include <cmath>

#include "riskspace/riskcore.hpp"

namespace riskspace {

KusuokaMeasure::KusuokaMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("KusuokaMeasure: no atoms");
  Real total = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!(a.level >= 0 && a.level <= 1)) {
      throw std::invalid_argument("KusuokaMeasure: levels must lie in [0,1]");
    }
    if (i > 0 && !(a.level > atoms_[i - 1].level)) {
      throw std::invalid_argument("KusuokaMeasure: levels must be strictly increasing");
    }
    if (!(a.weight > 0) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("KusuokaMeasure: weights must be positive");
    }
    total += a.weight;
  }
  if (std::fabs(total - 1) > kNormTol) {
    throw std::invalid_argument("KusuokaMeasure: weights must sum to 1");
  }
}

SpectrumSet::SpectrumSet(std::vector<Spectrum> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("SpectrumSet: empty set");
  for (const auto& s : members_) s.require_valid();
}

KusuokaMeasure mu_from_sigma(const Spectrum& sigma) {
  sigma.require_valid();
  if (sigma.kind() == SpectrumKind::avar) {
    return KusuokaMeasure({{sigma.avar_level(), 1}});
  }
  if (sigma.kind() != SpectrumKind::step) {
    throw std::invalid_argument("mu_from_sigma: needs a step spectrum (apply step_approx first)");
  }
  const auto b = sigma.breakpoints();
  const auto c = sigma.cell_values();
  std::vector<KusuokaMeasure::Atom> atoms;
  if (c[0] > 0) atoms.push_back({0, c[0]});
  for (std::size_t k = 1; k < c.size(); ++k) {
    const Real jump = c[k] - c[k - 1];
    if (jump > 0) atoms.push_back({b[k], (1 - b[k]) * jump});
  }
  return KusuokaMeasure(std::move(atoms));
}

Spectrum sigma_from_mu(const KusuokaMeasure& mu) {
  if (mu.has_atom_at_one()) {
    throw std::invalid_argument(
        "sigma_from_mu: the measure has an atom at 1; a spectral density exists only if mu({1}) = 0");
  }
  std::vector<Real> bps{0};
  std::vector<Real> vals;
  Real level = 0;
  for (const auto& a : mu.atoms()) {
    if (a.level > 0) {
      vals.push_back(level);
      bps.push_back(a.level);
    }
    level += a.weight / (1 - a.level);
  }
  vals.push_back(level);
  bps.push_back(1);
  return Spectrum::step(std::move(bps), std::move(vals));
}

Real mixture_risk(const KusuokaMeasure& mu, const StepQuantile& d) {
  Real total = 0;
  for (const auto& a : mu.atoms()) total += a.weight * avar(a.level, d);
  return total;
}

SupRisk sup_risk(const SpectrumSet& set, const StepQuantile& d) {
  SupRisk best{spectral_risk(set[0], d), 0};
  for (std::size_t i = 1; i < set.size(); ++i) {
    const Real v = spectral_risk(set[i], d);
    if (v > best.value) best = {v, i};
  }
  return best;
}

Real set_norm(const SpectrumSet& set, const StepQuantile& d) {
  return sup_risk(set, abs_value(d)).value;
}

}  // namespace riskspace
