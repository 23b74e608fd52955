#include "riskspace/dualspace.hpp"

#include <algorithm>
#include <cmath>

namespace riskspace {
namespace {

std::vector<Real> spectrum_cuts(const Spectrum& sigma) {
  if (sigma.is_step()) return {sigma.breakpoints().begin(), sigma.breakpoints().end()};
  auto mesh = geometric_mesh(60);
  mesh.insert(mesh.begin(), 0);
  mesh.push_back(1);
  return mesh;
}

// tail_integral(d, a) at ascending points, in one sweep from the top.
std::vector<Real> tails_at(const StepQuantile& d, const std::vector<Real>& points) {
  std::vector<Real> out(points.size());
  std::size_t k = d.size();
  Real full = 0;
  for (std::size_t i = points.size(); i-- > 0;) {
    const Real a = points[i];
    if (a >= 1) continue;
    while (k > 0 && d.lower(k - 1) >= a) {
      --k;
      full += d.values()[k] * (d.upper(k) - d.lower(k));
    }
    out[i] = full + (k > 0 && d.upper(k - 1) > a ? d.values()[k - 1] * (d.upper(k - 1) - a) : Real{0});
  }
  return out;
}

}  // namespace

std::vector<Real> dual_check_points(const StepQuantile& abs_z, const Spectrum& sigma) {
  auto points = union_breakpoints(abs_z.breakpoints(), spectrum_cuts(sigma));
  points.pop_back();  // the level 1 is handled as a limit
  return points;
}

DualNorm dual_norm(const StepQuantile& z, const Spectrum& sigma) {
  sigma.require_valid();
  const StepQuantile abs_z = abs_value(z);
  DualNorm best{0, 0, true};
  if (abs_z.max_value() == 0) return best;

  const auto points = dual_check_points(abs_z, sigma);
  const auto tails = tails_at(abs_z, points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Real alpha = points[i];
    const Real upper = tails[i];
    const Real s = sigma.tail(alpha);
    const Real ratio = s > 0 ? upper / s : (upper > 0 ? kInf : Real{0});
    if (ratio > best.value) best = {ratio, alpha, true};
  }

  // (1-a) AVaR_a(|Z|) ~ esssup|Z| (1-a) and S(a) ~ c (1-a)^order as a -> 1.
  const auto asym = sigma.asymptotics();
  if (!asym) {
    best.limit_verified = false;
    return best;
  }
  const Real limit = asym->order < 1 ? Real{0} : abs_z.max_value() / asym->coefficient;
  if (limit > best.value) best = {limit, 1, true};
  return best;
}

DominanceCertificate dominates(const StepQuantile& z, const Spectrum& sigma, Real eta) {
  if (!(eta > 0)) throw std::domain_error("dominates: eta must be positive");
  sigma.require_valid();
  const StepQuantile abs_z = abs_value(z);

  DominanceCertificate cert{true, 0, kInf};
  auto consider = [&](Real alpha, Real margin) {
    if (margin <= cert.margin) {
      cert.margin = margin;
      cert.witness_alpha = alpha;
    }
  };
  const auto points = dual_check_points(abs_z, sigma);
  const auto tails = tails_at(abs_z, points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    consider(points[i], (eta * sigma.tail(points[i]) - tails[i]) / (1 - points[i]));
  }
  if (const auto asym = sigma.asymptotics()) {
    const Real limit = asym->order < 1 ? kInf : eta * asym->coefficient - abs_z.max_value();
    consider(1, limit);
  }
  cert.holds = cert.margin >= -kTol;
  return cert;
}

Real indicator_dual_norm(const Spectrum& sigma, Real p_a) {
  if (!(p_a > 0 && p_a <= 1)) throw std::domain_error("indicator_dual_norm: P(A) must lie in (0,1]");
  sigma.require_valid();
  return p_a / sigma.tail(1 - p_a);
}

Real dual_upper_bound(const StepQuantile& z, const Spectrum& sigma) {
  sigma.require_valid();
  const StepQuantile abs_z = abs_value(z);
  const auto grid = union_breakpoints(abs_z.breakpoints(), spectrum_cuts(sigma));
  Real best = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (abs_z.upper(k) <= grid[i]) ++k;
    const Real v = abs_z.values()[k];
    if (v == 0) continue;
    const Real s = sigma.density(grid[i]);
    best = std::max(best, s > 0 ? v / s : kInf);
  }
  return best;
}

PairedSample hahn_banach_witness(const Spectrum& sigma, const StepQuantile& d) {
  sigma.require_valid();
  auto atoms = d.atoms();
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return std::fabs(a.value) < std::fabs(b.value); });
  const auto cuts = spectrum_cuts(sigma);

  std::vector<PairedSample::Row> rows;
  Real at = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Real end = (i + 1 == atoms.size()) ? Real{1} : at + atoms[i].mass;
    const Real sign = atoms[i].value < 0 ? Real{-1} : Real{1};
    // split the piece where sigma changes so z carries sigma's local average
    auto it = std::upper_bound(cuts.begin(), cuts.end(), at);
    Real lo = at;
    while (lo < end) {
      const Real hi = (it != cuts.end() && *it < end) ? *it++ : end;
      if (hi > lo) rows.push_back({atoms[i].value, sign * sigma.mass(lo, hi) / (hi - lo), hi - lo});
      lo = hi;
    }
    at = end;
  }
  return PairedSample(std::move(rows));
}

Real pairing(const PairedSample& p) {
  Real total = 0;
  for (const auto& r : p.rows()) total += r.w * r.y * r.z;
  return total;
}

}  // namespace riskspace
