#include "riskspace/distmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "riskspace/spectrum.hpp"

namespace riskspace {

StepQuantile::StepQuantile(std::vector<Real> breakpoints, std::vector<Real> values) {
  if (values.empty() || breakpoints.size() != values.size() + 1) {
    throw std::invalid_argument("StepQuantile: need n+1 breakpoints for n >= 1 values");
  }
  if (breakpoints.front() != 0 || breakpoints.back() != 1) {
    throw std::invalid_argument("StepQuantile: breakpoints must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k] > breakpoints[k - 1])) {
      throw std::invalid_argument("StepQuantile: breakpoints must be strictly increasing");
    }
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) throw std::invalid_argument("StepQuantile: non-finite value");
    if (k > 0 && values[k] < values[k - 1]) {
      if (values[k] < values[k - 1] - kTol) {
        throw std::invalid_argument("StepQuantile: values must be nondecreasing");
      }
      values[k] = values[k - 1];
    }
  }
  breakpoints_.push_back(0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!values_.empty() && values[k] == values_.back()) {
      breakpoints_.back() = breakpoints[k + 1];
    } else {
      values_.push_back(values[k]);
      breakpoints_.push_back(breakpoints[k + 1]);
    }
  }
}

StepQuantile StepQuantile::constant(Real c) { return StepQuantile({0, 1}, {c}); }

StepQuantile StepQuantile::from_atoms(std::vector<Atom> atoms) {
  std::erase_if(atoms, [](const Atom& a) { return !(a.mass > 0); });
  if (atoms.empty()) throw std::invalid_argument("StepQuantile: no atom with positive mass");
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value) || !std::isfinite(a.mass)) {
      throw std::invalid_argument("StepQuantile: non-finite atom");
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });

  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && a.value - merged.back().value <= kTol) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }

  // Breakpoints come from prefix sums in the lower half and from suffix sums
  // in the upper half so that tiny masses near 1 stay resolvable.
  const std::size_t n = merged.size();
  std::vector<Real> prefix(n + 1, 0);
  std::vector<Real> suffix(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + merged[k].mass;
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + merged[k].mass;
  const Real total = prefix[n];

  std::vector<Real> bps{0};
  std::vector<Real> vals;
  for (std::size_t k = 0; k < n; ++k) {
    Real u = (k + 1 == n) ? Real{1}
             : prefix[k + 1] <= total / 2 ? prefix[k + 1] / total
                                          : 1 - suffix[k + 1] / total;
    if (k + 1 < n && u >= 1) continue;  // unresolvable sliver below the top atom
    if (u <= bps.back()) continue;
    bps.push_back(u);
    vals.push_back(merged[k].value);
  }
  if (bps.back() != 1) {
    bps.back() = 1;
  }
  return StepQuantile(std::move(bps), std::move(vals));
}

Real StepQuantile::mean() const {
  Real total = 0;
  for (std::size_t k = 0; k < size(); ++k) total += values_[k] * mass(k);
  return total;
}

std::vector<Atom> StepQuantile::atoms() const {
  std::vector<Atom> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back({values_[k], mass(k)});
  return out;
}

StepQuantile StepQuantile::shifted(Real c) const {
  auto vals = values_;
  for (auto& v : vals) v += c;
  return StepQuantile(breakpoints_, std::move(vals));
}

StepQuantile StepQuantile::scaled(Real lambda) const {
  if (lambda >= 0) {
    auto vals = values_;
    for (auto& v : vals) v *= lambda;
    return StepQuantile(breakpoints_, std::move(vals));
  }
  auto a = atoms();
  for (auto& atom : a) atom.value *= lambda;
  return from_atoms(std::move(a));
}

StepQuantile from_samples(std::span<const Real> values, std::span<const Real> weights) {
  if (values.empty()) throw std::invalid_argument("from_samples: empty sample");
  if (!weights.empty() && weights.size() != values.size()) {
    throw std::invalid_argument("from_samples: weights and values differ in length");
  }
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Real w = weights.empty() ? Real{1} : weights[i];
    if (!(w > 0) || !std::isfinite(w)) {
      throw std::invalid_argument("from_samples: weights must be positive and finite");
    }
    if (!std::isfinite(values[i])) throw std::invalid_argument("from_samples: non-finite value");
    atoms.push_back({values[i], w});
  }
  return StepQuantile::from_atoms(std::move(atoms));
}

Real quantile(const StepQuantile& d, Real p) {
  if (!(p >= 0 && p < 1)) throw std::domain_error("quantile: p must lie in [0,1)");
  const auto bps = d.breakpoints();
  const auto it = std::upper_bound(bps.begin(), bps.end(), p);
  return d.values()[static_cast<std::size_t>(it - bps.begin()) - 1];
}

StepQuantile abs_value(const StepQuantile& d) {
  if (d.min_value() >= 0) return d;
  auto atoms = d.atoms();
  for (auto& a : atoms) a.value = std::fabs(a.value);
  return StepQuantile::from_atoms(std::move(atoms));
}

Real lp_norm(const StepQuantile& d, Real p) {
  if (!(p >= 1)) throw std::domain_error("lp_norm: p must be >= 1");
  if (std::isinf(p)) return std::max(std::fabs(d.min_value()), std::fabs(d.max_value()));
  Real total = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Real v = std::fabs(d.values()[k]);
    if (v > 0) total += std::pow(v, p) * d.mass(k);
  }
  return p == 1 ? total : std::pow(total, 1 / p);
}

Real tail_integral(const StepQuantile& d, Real alpha) {
  if (alpha >= 1) return 0;
  Real total = 0;
  for (std::size_t k = d.size(); k-- > 0;) {
    if (d.upper(k) <= alpha) break;
    total += d.values()[k] * (d.upper(k) - std::max(d.lower(k), alpha));
  }
  return total;
}

std::vector<Real> union_breakpoints(std::span<const Real> a, std::span<const Real> b) {
  std::vector<Real> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PairedSample::PairedSample(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("PairedSample: no rows");
  Real total = 0;
  for (const auto& r : rows_) {
    if (!(r.w > 0) || !std::isfinite(r.w)) {
      throw std::invalid_argument("PairedSample: weights must be positive");
    }
    if (!std::isfinite(r.y) || !std::isfinite(r.z)) {
      throw std::invalid_argument("PairedSample: non-finite observation");
    }
    total += r.w;
  }
  if (std::fabs(total - 1) > kTol) {
    throw std::invalid_argument("PairedSample: weights must sum to 1");
  }
}

StepQuantile PairedSample::y_marginal() const {
  return combine([](Real y, Real) { return y; });
}

StepQuantile PairedSample::z_marginal() const {
  return combine([](Real, Real z) { return z; });
}

StepQuantile PairedSample::combine(const std::function<Real(Real, Real)>& f) const {
  std::vector<Atom> atoms;
  atoms.reserve(rows_.size());
  for (const auto& r : rows_) atoms.push_back({f(r.y, r.z), r.w});
  return StepQuantile::from_atoms(std::move(atoms));
}

PairedSample comonotone_pair(const StepQuantile& d, const Spectrum& sigma) {
  sigma.require_valid();
  std::vector<Real> grid;
  if (sigma.is_step()) {
    grid = union_breakpoints(d.breakpoints(), sigma.breakpoints());
  } else {
    grid = union_breakpoints(d.breakpoints(), geometric_mesh(60));
  }
  std::vector<PairedSample::Row> rows;
  rows.reserve(grid.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const Real a = grid[i];
    const Real b = grid[i + 1];
    while (d.upper(k) <= a) ++k;
    rows.push_back({d.values()[k], sigma.mass(a, b) / (b - a), b - a});
  }
  return PairedSample(std::move(rows));
}

}  // namespace riskspace
