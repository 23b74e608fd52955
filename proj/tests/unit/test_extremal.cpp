#include <cmath>

#include "riskspace/extremal.hpp"
#include "riskspace/random.hpp"
#include "riskspace/riskcore.hpp"
#include "support.hpp"

using namespace riskspace;

TEST_CASE("zeta agrees with the standard library") {
  for (double s : {1.5, 2.0, 3.0, 4.0, 5.5, 10.0}) CHECK_NEAR(zeta(s), std::riemann_zeta(s), 1e-12L);
  CHECK_THROWS_AS(zeta(1), std::domain_error);
}

TEST_CASE("lp_escape for PowerSqrt, q = 1.5") {
  const auto ps = Spectrum::power_sqrt();
  const Real k = std::sqrt(2.0L);
  const Real limit = k * std::riemann_zeta(3.0) / std::riemann_zeta(4.0);
  CHECK_NEAR(limit, 1.57066L, 1e-5L);

  const auto one = lp_escape(ps, 1.5L, 1);
  CHECK_NEAR(one.k, k, 1e-15L);
  CHECK_NEAR(one.lp_partial_p, k / std::riemann_zeta(4.0), 1e-12L);
  CHECK_NEAR(one.predicted_risk, one.lp_partial_p, 1e-12L);
  CHECK_NEAR(one.limit_risk, limit, 1e-12L);

  Real prev = 0;
  for (int n : {1, 2, 5, 10, 100, 1000}) {
    const auto e = lp_escape(ps, 1.5L, n);
    CHECK(e.risk >= prev - 1e-15L);
    CHECK(e.risk <= limit + 1e-6L);
    CHECK(e.predicted_risk <= e.risk + 1e-12L);
    prev = e.risk;
    // every band edge solves its target to 1e-10
    Real target = 0;
    for (int j = 1; j <= e.represented_depth; ++j) {
      target += k / std::riemann_zeta(4.0) * std::pow(Real(j), -4);
      CHECK_NEAR(ps.power_integral(1.5L, e.band_edges[j]), target, 1e-10L);
    }
  }
  // harmonic growth between N and 2N
  const auto a = lp_escape(ps, 1.5L, 50);
  const auto b = lp_escape(ps, 1.5L, 100);
  Real tail = 0;
  for (int n = 51; n <= 100; ++n) tail += 1.0L / n;
  CHECK_NEAR(b.lp_partial_p - a.lp_partial_p, tail * k / std::riemann_zeta(4.0), 1e-12L);
  CHECK(b.lp_partial_p - a.lp_partial_p >= k / std::riemann_zeta(4.0) / 2);

  CHECK_THROWS_AS(lp_escape(ps, 1, 5), std::domain_error);
  CHECK_THROWS_AS(lp_escape(ps, kInf, 5), std::domain_error);
  CHECK_THROWS_AS(lp_escape(ps, 2.5L, 5), std::domain_error);  // sigma not in L^2.5
}

TEST_CASE("lp_escape for a bounded step spectrum reaches deeper bands") {
  Rng rng(97);
  const auto s = random_step_spectrum(rng, 8);
  const auto e = lp_escape(s, 2, 60);
  CHECK(e.represented_depth >= 20);
  CHECK(e.risk <= e.limit_risk + 1e-6L);
  // the quantile of the built variable reproduces the band integral from below
  CHECK(e.predicted_risk <= e.limit_risk);
  CHECK(e.variable.max_value() <= e.represented_depth * lq_norm(s, kInf));
}

TEST_CASE("linf_escape") {
  const auto ps = Spectrum::power_sqrt();
  const auto one = linf_escape(ps, 1);
  CHECK(one.risk <= 2);
  CHECK(one.esssup == 1);
  CHECK_NEAR(one.band_edges[1], 0.75L, 1e-15L);
  Real prev = 0;
  for (int n = 1; n <= 30; ++n) {
    const auto e = linf_escape(ps, n);
    CHECK(e.risk <= 4);
    CHECK(e.risk <= e.risk_bound + 1e-12L);
    CHECK(e.risk >= prev);
    CHECK(e.esssup == n);
    prev = e.risk;
  }
  Rng rng(101);
  const auto s = random_step_spectrum(rng);
  CHECK(linf_escape(s, 40).risk <= 4);
  CHECK_THROWS_AS(linf_escape(ps, 0), std::domain_error);
}

TEST_CASE("l1_divergence_demo") {
  const auto heavy = l1_divergence_demo(heavy_tail_rule(), Spectrum::constant(), 10);
  CHECK(heavy.exceeded);
  CHECK_FALSE(heavy.vacuous);
  CHECK(heavy.rows.back().l1 > 10);
  for (std::size_t i = 0; i < heavy.rows.size(); ++i) {
    // min(2^j, 1/(1-U)) dyadically: mean 1 + j/2
    CHECK_NEAR(heavy.rows[i].l1, 1 + i / 2.0L, 1e-12L);
    if (i > 0) CHECK(heavy.rows[i].l1 > heavy.rows[i - 1].l1);
  }
  for (const auto& s : {Spectrum::power_sqrt(), Spectrum::avar(0.7L)}) {
    const auto demo = l1_divergence_demo(heavy_tail_rule(), s, 10);
    CHECK(demo.exceeded);
    for (const auto& r : demo.rows) CHECK(r.sigma_norm >= r.l1 - 1e-12L);
  }
  const auto bounded = l1_divergence_demo(from_samples(std::vector<Real>{1, 5, -7}), Spectrum::constant(), 10);
  CHECK(bounded.vacuous);
  CHECK_FALSE(bounded.exceeded);
  const auto capped = l1_divergence_demo([](Real u) { return std::min<Real>(3, 1 / (1 - u)); }, Spectrum::constant(), 10);
  CHECK(capped.vacuous);
}

TEST_CASE("step_density_approx") {
  const auto four = from_samples(std::vector<Real>{1, 2, 3, 4});
  const auto exact = step_density_approx(Spectrum::constant(), four, 0.01L);
  CHECK(exact.error == 0);
  CHECK(exact.step == four);

  const auto avar = step_density_approx(Spectrum::avar(0.5L), four, 0.01L);
  CHECK(avar.error < 0.01L);

  std::vector<Real> b, v;
  for (int i = 0; i <= 1024; ++i) b.push_back(i / 1024.0L);
  for (int i = 0; i < 1024; ++i) v.push_back((i + 0.5L) / 1024);
  const StepQuantile uniform(b, v);
  Rng rng(103);
  const auto s = random_step_spectrum(rng);
  const auto coarse = step_density_approx(s, uniform, 0.1L);
  CHECK(coarse.error < 0.1L);
  CHECK(coarse.steps < 1024);
  CHECK(coarse.steps >= 1);

  for (int t = 0; t < 50; ++t) {
    const auto sg = random_step_spectrum(rng);
    const auto d = random_step_quantile(rng);
    for (Real eps : {0.1L, 0.01L}) {
      const auto a = step_density_approx(sg, d, eps);
      CHECK(a.error < eps);
      CHECK(a.steps <= d.size());
    }
  }
  CHECK(step_density_approx(Spectrum::power_sqrt(), uniform, 0.05L).error < 0.05L);
  CHECK_THROWS_AS(step_density_approx(s, four, 0), std::domain_error);
}
