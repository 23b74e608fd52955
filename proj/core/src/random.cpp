#include "riskspace/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace riskspace {
namespace {

int cell_count(Rng& rng, int max_cells) { return std::uniform_int_distribution<int>(1, std::max(1, max_cells))(rng); }

// n cells: 0 = b_0 < b_1 < ... < b_n = 1, interior points kept apart by 1e-6.
std::vector<Real> random_breakpoints(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(0, 1);
  std::set<Real> inner;
  while (static_cast<int>(inner.size()) < n - 1) {
    const Real x = std::round(u(rng) * 1e6L) / 1e6L;
    if (x > 0 && x < 1) inner.insert(x);
  }
  std::vector<Real> bps{0};
  bps.insert(bps.end(), inner.begin(), inner.end());
  bps.push_back(1);
  return bps;
}

}  // namespace

Spectrum random_step_spectrum(Rng& rng, int max_cells) {
  const int n = cell_count(rng, max_cells);
  auto bps = random_breakpoints(rng, n);
  std::uniform_real_distribution<double> inc(0.01, 1);
  std::vector<Real> vals(n);
  Real level = 0;
  Real integral = 0;
  for (int k = 0; k < n; ++k) {
    level += inc(rng);
    vals[k] = level;
    integral += level * (bps[k + 1] - bps[k]);
  }
  for (auto& v : vals) v /= integral;
  return Spectrum::step(std::move(bps), std::move(vals));
}

StepQuantile random_step_quantile(Rng& rng, int max_cells, Real lo, Real hi) {
  const int n = cell_count(rng, max_cells);
  auto bps = random_breakpoints(rng, n);
  std::uniform_real_distribution<double> u(static_cast<double>(lo), static_cast<double>(hi));
  std::vector<Real> vals(n);
  for (auto& v : vals) v = u(rng);
  std::sort(vals.begin(), vals.end());
  return StepQuantile(std::move(bps), std::move(vals));
}

PairedSample random_joint(Rng& rng, int max_rows) {
  const int n = cell_count(rng, max_rows);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::uniform_real_distribution<double> weight(0.05, 1);
  std::vector<PairedSample::Row> rows(n);
  Real total = 0;
  for (auto& r : rows) {
    r = {coord(rng), coord(rng), weight(rng)};
    total += r.w;
  }
  for (auto& r : rows) r.w /= total;
  return PairedSample(std::move(rows));
}

}  // namespace riskspace
