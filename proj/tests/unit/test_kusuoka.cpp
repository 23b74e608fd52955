#include "riskspace/kusuoka.hpp"
#include "riskspace/random.hpp"
#include "riskspace/riskcore.hpp"
#include "support.hpp"

using namespace riskspace;

namespace {
const StepQuantile four = from_samples(std::vector<Real>{1, 2, 3, 4});
}

TEST_CASE("mu_from_sigma") {
  const auto one = mu_from_sigma(Spectrum::constant());
  REQUIRE(one.atoms().size() == 1);
  CHECK(one.atoms()[0].level == 0);
  CHECK(one.atoms()[0].weight == 1);

  for (Real a : {0.0L, 0.25L, 0.5L, 0.9L}) {
    const auto mu = mu_from_sigma(Spectrum::avar(a));
    REQUIRE(mu.atoms().size() == 1);
    CHECK(mu.atoms()[0].level == a);
    CHECK(mu.atoms()[0].weight == 1);
  }

  const auto jump = mu_from_sigma(Spectrum::step({0, 0.5L, 1}, {0.5L, 1.5L}));
  Real total = 0;
  for (const auto& a : jump.atoms()) total += a.weight;
  CHECK_NEAR(total, 1, 1e-12L);
  CHECK_THROWS_AS(mu_from_sigma(Spectrum::power_sqrt()), std::invalid_argument);
}

TEST_CASE("sigma_from_mu") {
  const auto flat = sigma_from_mu(KusuokaMeasure({{0, 1}}));
  CHECK(flat.cell_values().size() == 1);
  CHECK(flat.cell_values()[0] == 1);

  const auto av = sigma_from_mu(KusuokaMeasure({{0.3L, 1}}));
  CHECK_NEAR(av.density(0.2L), 0, 1e-15L);
  CHECK_NEAR(av.density(0.5L), 1 / 0.7L, 1e-15L);

  const auto mix = sigma_from_mu(KusuokaMeasure({{0, 0.5L}, {0.5L, 0.5L}}));
  CHECK_NEAR(mix.density(0.25L), 0.5L, 1e-15L);
  CHECK_NEAR(mix.density(0.75L), 1.5L, 1e-15L);
  CHECK(mix.valid());

  try {
    sigma_from_mu(KusuokaMeasure({{0, 0.5L}, {1, 0.5L}}));
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("mu({1}) = 0") != std::string::npos);
  }
}

TEST_CASE("KusuokaMeasure invariants") {
  CHECK_THROWS_AS(KusuokaMeasure({}), std::invalid_argument);
  CHECK_THROWS_AS(KusuokaMeasure({{0.5L, 0.5L}, {0.2L, 0.5L}}), std::invalid_argument);
  CHECK_THROWS_AS(KusuokaMeasure({{0.5L, 0.7L}}), std::invalid_argument);
  CHECK_THROWS_AS(KusuokaMeasure({{0.5L, 1.5L}, {0.6L, -0.5L}}), std::invalid_argument);
  CHECK_THROWS_AS(KusuokaMeasure({{1.5L, 1}}), std::invalid_argument);
  CHECK(KusuokaMeasure({{0, 0.5L}, {1, 0.5L}}).has_atom_at_one());
}

TEST_CASE("mixture_risk and the Kusuoka identity") {
  Rng rng(31);
  const auto d = random_step_quantile(rng);
  CHECK_NEAR(mixture_risk(KusuokaMeasure({{0, 1}}), d), d.mean(), 1e-12L);
  CHECK_NEAR(mixture_risk(KusuokaMeasure({{0.5L, 1}}), four), 3.5L, 1e-15L);
  CHECK_NEAR(mixture_risk(KusuokaMeasure({{0, 0.5L}, {1, 0.5L}}), four), 0.5L * 2.5L + 0.5L * 4, 1e-15L);

  for (int t = 0; t < 200; ++t) {
    const auto s = random_step_spectrum(rng);
    const auto y = random_step_quantile(rng);
    CHECK_NEAR(mixture_risk(mu_from_sigma(s), y), spectral_risk(s, y), 1e-10L);
    const auto back = sigma_from_mu(mu_from_sigma(s));
    for (Real b : s.breakpoints()) CHECK_NEAR(back.tail(b), s.tail(b), 1e-10L);
  }
}

TEST_CASE("sup_risk and set_norm") {
  Rng rng(37);
  const auto s = random_step_spectrum(rng);
  const auto d = random_step_quantile(rng);
  const auto single = sup_risk(SpectrumSet({s}), d);
  CHECK(single.value == spectral_risk(s, d));
  CHECK(single.index == 0);

  const auto pair = sup_risk(SpectrumSet({Spectrum::avar(0), Spectrum::avar(0.5L)}), four);
  CHECK_NEAR(pair.value, 3.5L, 1e-15L);
  CHECK(pair.index == 1);

  const auto tie = sup_risk(SpectrumSet({Spectrum::constant(), Spectrum::constant()}), four);
  CHECK(tie.index == 0);
  CHECK(sup_risk(SpectrumSet({Spectrum::constant()}), StepQuantile::constant(3)).value == 3);

  CHECK_NEAR(set_norm(SpectrumSet({Spectrum::constant()}), d), lp_norm(d, 1), 1e-12L);
  CHECK(set_norm(SpectrumSet({s, Spectrum::power_sqrt()}), StepQuantile::constant(0)) == 0);

  Real prev = 0;
  for (int n : {2, 4, 8, 16, 32}) {
    std::vector<Spectrum> grid;
    for (int i = 0; i < n; ++i) grid.push_back(Spectrum::avar(1 - std::ldexp(1.0L, -i)));
    const Real v = set_norm(SpectrumSet(grid), four);
    CHECK(v >= prev);
    CHECK(v <= 4);
    prev = v;
  }
  CHECK_NEAR(prev, 4, 1e-12L);

  for (int t = 0; t < 50; ++t) {
    const SpectrumSet set({random_step_spectrum(rng), random_step_spectrum(rng)});
    const auto y = random_step_quantile(rng);
    CHECK(set_norm(set, y) >= lp_norm(y, 1) - 1e-12L);
    CHECK(set_norm(set, y) <= lp_norm(y, kInf) + 1e-12L);
    const auto j = random_joint(rng);
    const auto sum = j.combine([](Real a, Real b) { return a + b; });
    CHECK(set_norm(set, sum) <= set_norm(set, j.y_marginal()) + set_norm(set, j.z_marginal()) + 1e-9L);
  }
  CHECK_THROWS_AS(SpectrumSet({}), std::invalid_argument);
}
