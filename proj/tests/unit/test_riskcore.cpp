#include <cmath>

#include "riskspace/random.hpp"
#include "riskspace/riskcore.hpp"
#include "support.hpp"

using namespace riskspace;

namespace {
const StepQuantile four = from_samples(std::vector<Real>{1, 2, 3, 4});

StepQuantile dyadic_uniform(int k) {
  std::vector<Real> b, v;
  const int n = 1 << k;
  for (int i = 0; i <= n; ++i) b.push_back(Real(i) / n);
  for (int i = 0; i < n; ++i) v.push_back((i + 0.5L) / n);
  return StepQuantile(b, v);
}
}  // namespace

TEST_CASE("spectral_risk examples") {
  Rng rng(1);
  const auto d = random_step_quantile(rng);
  CHECK_NEAR(spectral_risk(Spectrum::constant(), d), d.mean(), 1e-12L);
  CHECK_NEAR(spectral_risk(Spectrum::avar(0.5L), four), 3.5L, 1e-15L);

  // \int_0^1 u /(2 sqrt(1-u)) du = 2/3; midpoint discretization converges
  Real prev_err = 1;
  for (int k : {4, 8, 12, 16}) {
    const Real err = std::fabs(spectral_risk(Spectrum::power_sqrt(), dyadic_uniform(k)) - 2.0L / 3);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-4L);
  CHECK_THROWS_AS(spectral_risk(Spectrum::step({0, 1}, {3}), four), std::invalid_argument);
}

TEST_CASE("spectral_risk matches the product-integral oracle") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_step_spectrum(rng);
    const auto d = random_step_quantile(rng);
    CHECK_NEAR(spectral_risk(s, d), oracle::product_integral(oracle::of(s), oracle::of(d)), 1e-11L);
    CHECK_NEAR(spectral_risk_via_cdf(s, d), spectral_risk(s, d), 1e-9L);
  }
}

TEST_CASE("avar") {
  CHECK_NEAR(avar(0, four), 2.5L, 1e-15L);
  CHECK_NEAR(avar(0.5L, four), 3.5L, 1e-15L);
  CHECK(avar(1, four) == 4);
  CHECK_THROWS_AS(avar(1.1L, four), std::domain_error);
}

TEST_CASE("sigma_norm and its cdf form") {
  Rng rng(3);
  const auto d = random_step_quantile(rng);
  CHECK_NEAR(sigma_norm(Spectrum::constant(), d), lp_norm(d, 1), 1e-12L);
  CHECK(sigma_norm(Spectrum::power_sqrt(), StepQuantile::constant(0)) == 0);
  const StepQuantile mixed({0, 0.5L, 1}, {-2, 1});
  CHECK_NEAR(sigma_norm(Spectrum::avar(0.5L), mixed), 2, 1e-15L);
  CHECK_NEAR(sigma_norm_via_cdf(Spectrum::avar(0.5L), mixed), 2, 1e-15L);
  CHECK_NEAR(sigma_norm_via_cdf(Spectrum::constant(), d), lp_norm(d, 1), 1e-12L);
  CHECK_NEAR(sigma_norm_via_cdf(Spectrum::power_sqrt(), StepQuantile::constant(2.5L)), 2.5L, 1e-15L);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_step_spectrum(rng);
    const auto y = random_step_quantile(rng);
    CHECK_NEAR(sigma_norm(s, y), sigma_norm_via_cdf(s, y), 1e-9L);
  }
  CHECK_NEAR(sigma_norm(Spectrum::power_sqrt(), four), sigma_norm_via_cdf(Spectrum::power_sqrt(), four), 1e-12L);
}

TEST_CASE("risk axioms on random inputs") {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_step_spectrum(rng);
    const auto d = random_step_quantile(rng);
    const Real r = spectral_risk(s, d);
    CHECK_NEAR(spectral_risk(s, d.shifted(1.75L)), r + 1.75L, 1e-12L);
    CHECK_NEAR(spectral_risk(s, d.scaled(3)), 3 * r, 1e-11L);
    CHECK(spectral_risk(s, d.shifted(0.5L)) >= r);

    const auto j = random_joint(rng);
    const auto y = j.y_marginal();
    const auto z = j.z_marginal();
    const auto sum = j.combine([](Real a, Real b) { return a + b; });
    const auto diff = j.combine([](Real a, Real b) { return b - a; });
    CHECK(sigma_norm(s, sum) <= sigma_norm(s, y) + sigma_norm(s, z) + 1e-9L);
    CHECK(std::fabs(spectral_risk(s, z) - spectral_risk(s, y)) <= sigma_norm(s, diff) + 1e-9L);
  }
  // translation pair attains the Lipschitz bound
  const auto s = random_step_spectrum(rng);
  CHECK_NEAR(spectral_risk(s, StepQuantile::constant(2.5L)) - spectral_risk(s, StepQuantile::constant(0)),
             sigma_norm(s, StepQuantile::constant(2.5L)), 1e-15L);
}

TEST_CASE("representation_sup_check") {
  const auto flat = representation_sup_check(Spectrum::constant(), four, 1);
  for (Real v : flat.shuffled) CHECK_NEAR(v, 2.5L, 1e-12L);

  const auto two = representation_sup_check(Spectrum::avar(0.5L), from_samples(std::vector<Real>{1, 2}), 1);
  CHECK_NEAR(two.report.value, 2, 1e-15L);
  CHECK_NEAR(two.anti_comonotone, 1, 1e-15L);
  CHECK(two.dominated);
  CHECK(two.report.method == RiskMethod::comonotone_sup);
  CHECK(to_string(two.report.method) == "comonotone-sup");

  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    const auto s = random_step_spectrum(rng);
    const auto chk = representation_sup_check(s, four, t);
    CHECK(chk.report.residual <= 1e-12L);
    CHECK(chk.dominated);
    CHECK(chk.shuffled.size() == 64);
  }
  CHECK(representation_sup_check(Spectrum::power_sqrt(), four, 3).dominated);
}

TEST_CASE("semideviation") {
  CHECK_NEAR(semideviation(StepQuantile::constant(4), 2, 0.5L).value, 4, 1e-15L);
  CHECK_NEAR(semideviation(from_samples(std::vector<Real>{0, 2}), 1, 1).value, 1.5L, 1e-15L);
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto d = abs_value(random_step_quantile(rng));
    const auto r = semideviation(d, 1 + t % 4, 0.25L + (t % 3) * 0.25L);
    CHECK(r.value <= r.bound + 1e-12L);
  }
  CHECK_THROWS_AS(semideviation(four, 0.5L, 1), std::domain_error);
  CHECK_THROWS_AS(semideviation(four, 2, 0), std::domain_error);
}
