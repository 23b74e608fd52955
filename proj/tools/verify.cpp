#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "riskspace/dualspace.hpp"
#include "riskspace/embed.hpp"
#include "riskspace/extremal.hpp"
#include "riskspace/kusuoka.hpp"
#include "riskspace/random.hpp"
#include "riskspace/riskcore.hpp"

namespace riskspace::cli {
namespace {

using Check = std::function<Real(Rng&)>;

struct Invariant {
  const char* id;
  const char* anchor;
  Check margin;
};

Real uniform(Rng& rng, Real lo, Real hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Pointwise maximum of two quantile functions, a variable dominating both.
StepQuantile quantile_max(const StepQuantile& a, const StepQuantile& b) {
  const auto grid = union_breakpoints(a.breakpoints(), b.breakpoints());
  std::vector<Real> vals;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) vals.push_back(std::max(quantile(a, grid[i]), quantile(b, grid[i])));
  return StepQuantile(grid, vals);
}

std::vector<Invariant> roster() {
  return {
      {"chebyshev", "continuous Chebyshev sum inequality: ||Y||_1 <= ||Y||_sigma",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         return sigma_norm(s, d) - lp_norm(d, 1);
       }},
      {"holder", "comparison with L^p: ||Y||_sigma <= ||sigma||_q ||Y||_p",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         static constexpr Real qs[] = {1.5L, 2, 4};
         const Real q = qs[std::uniform_int_distribution<int>(0, 2)(r)];
         return lq_norm(s, q) * lp_norm(d, q / (q - 1)) - sigma_norm(s, d);
       }},
      {"cdf-agreement", "norm via quantile integral equals norm via cdf tail integral",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         return -std::fabs(sigma_norm(s, d) - sigma_norm_via_cdf(s, d));
       }},
      {"translation", "axiom (T): rho(Y + c) = rho(Y) + c",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         const Real c = uniform(r, -5, 5);
         return -std::fabs(spectral_risk(s, d.shifted(c)) - spectral_risk(s, d) - c);
       }},
      {"homogeneity", "axiom (H): rho(lambda Y) = lambda rho(Y), lambda > 0",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         const Real lambda = uniform(r, 0.01, 5);
         return -std::fabs(spectral_risk(s, d.scaled(lambda)) - lambda * spectral_risk(s, d));
       }},
      {"monotonicity", "axiom (M): Y1 <= Y2 implies rho(Y1) <= rho(Y2)",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d1 = random_step_quantile(r);
         const auto d2 = quantile_max(d1, random_step_quantile(r));
         return spectral_risk(s, d2) - spectral_risk(s, d1);
       }},
      {"triangle", "seminorm property: ||Y1 + Y2||_sigma <= ||Y1||_sigma + ||Y2||_sigma",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto j = random_joint(r);
         const auto sum = j.combine([](Real y, Real z) { return y + z; });
         return sigma_norm(s, j.y_marginal()) + sigma_norm(s, j.z_marginal()) - sigma_norm(s, sum);
       }},
      {"lipschitz", "continuity: |rho(Y2) - rho(Y1)| <= ||Y2 - Y1||_sigma",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto j = random_joint(r);
         const auto diff = j.combine([](Real y, Real z) { return z - y; });
         return sigma_norm(s, diff) - std::fabs(spectral_risk(s, j.z_marginal()) - spectral_risk(s, j.y_marginal()));
       }},
      {"representation", "rho_sigma(Y) = sup over couplings E[Y sigma(U')], attained comonotonically",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         const auto check = representation_sup_check(s, d, r(), 16);
         const Real exact = spectral_risk(s, d);
         return std::min(exact - std::max(check.max_shuffled, check.anti_comonotone), -check.report.residual);
       }},
      {"tail-concavity", "S is concave and S(a)/(1-a) >= 1",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto b = s.breakpoints();
         Real worst = kInf;
         for (std::size_t i = 0; i + 2 < b.size(); ++i) {
           const Real t = (b[i + 1] - b[i]) / (b[i + 2] - b[i]);
           worst = std::min(worst, s.tail(b[i + 1]) - ((1 - t) * s.tail(b[i]) + t * s.tail(b[i + 2])));
         }
         for (std::size_t i = 0; i + 1 < b.size(); ++i) worst = std::min(worst, s.tail(b[i]) / (1 - b[i]) - 1);
         return worst;
       }},
      {"kusuoka-mixture", "Kusuoka mixture identity: sum w_i AVaR_{a_i}(Y) = rho_sigma(Y)",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         return -std::fabs(mixture_risk(mu_from_sigma(s), d) - spectral_risk(s, d));
       }},
      {"round-trip", "sigma_mu(b) = sum_{a_i <= b} w_i/(1-a_i) inverts mu_sigma",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto back = sigma_from_mu(mu_from_sigma(s));
         Real worst = 0;
         for (Real b : s.breakpoints()) worst = std::max(worst, std::fabs(back.tail(b) - s.tail(b)));
         return -worst;
       }},
      {"sup-risk", "rho_S = max over the set dominates every member",
       [](Rng& r) {
         std::vector<Spectrum> members;
         for (int i = 0; i < 3; ++i) members.push_back(random_step_spectrum(r));
         const SpectrumSet set(members);
         const auto d = random_step_quantile(r);
         const Real sup = sup_risk(set, d).value;
         Real worst = kInf;
         for (const auto& m : members) worst = std::min(worst, sup - spectral_risk(m, d));
         return worst;
       }},
      {"duality", "dual pairing: |E[YZ]| <= ||Y||_sigma ||Z||*_sigma",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto j = random_joint(r);
         return sigma_norm(s, j.y_marginal()) * dual_norm(j.z_marginal(), s).value - std::fabs(pairing(j));
       }},
      {"hahn-banach", "the witness sigma(U) sign(Y) attains the norm with ||Z||* = 1",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         const auto w = hahn_banach_witness(s, d);
         return -std::max(std::fabs(pairing(w) - sigma_norm(s, d)),
                          std::fabs(dual_norm(w.z_marginal(), s).value - 1));
       }},
      {"dual-l1", "comparison with L^1: ||Z||_1 <= ||Z||*_sigma",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto z = random_step_quantile(r);
         return dual_norm(z, s).value - lp_norm(z, 1);
       }},
      {"dual-linf", "comparison with L^inf: ||Z||_inf <= ||Z||*_sigma sigma(1-)",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto z = random_step_quantile(r);
         return dual_norm(z, s).value * lq_norm(s, kInf) - lp_norm(z, kInf);
       }},
      {"dual-lq", "comparison with L^q: ||Z||_q <= ||Z||*_sigma ||sigma||_q",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto z = random_step_quantile(r);
         const Real q = uniform(r, 1, 6);
         return dual_norm(z, s).value * lq_norm(s, q) - lp_norm(z, q);
       }},
      {"dual-upper-bound", "upper bound: ||Z||* <= sup_u F^{-1}_|Z|(u)/sigma(u)",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto z = random_step_quantile(r);
         return dual_upper_bound(z, s) - dual_norm(z, s).value;
       }},
      {"dual-triangle", "the dual unit ball is absolutely convex: triangle inequality and homogeneity",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto j = random_joint(r);
         const auto sum = j.combine([](Real y, Real z) { return y + z; });
         const Real lambda = uniform(r, -5, 5);
         const Real y = dual_norm(j.y_marginal(), s).value;
         const Real tri = y + dual_norm(j.z_marginal(), s).value - dual_norm(sum, s).value;
         const Real hom = std::fabs(dual_norm(j.y_marginal().scaled(lambda), s).value - std::fabs(lambda) * y);
         return std::min(tri, -hom);
       }},
      {"dual-monotonicity", "AVaR monotonicity: |Z1| <= |Z2| implies ||Z1||* <= ||Z2||*",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto z1 = abs_value(random_step_quantile(r));
         const auto z2 = quantile_max(z1, abs_value(random_step_quantile(r)));
         return dual_norm(z2, s).value - dual_norm(z1, s).value;
       }},
      {"dominance", "|Z| is dominated by ||Z||* sigma",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto z = random_step_quantile(r);
         const Real eta = dual_norm(z, s).value;
         if (eta == 0) return Real{0};
         return dominates(z, s, eta).margin / eta;
       }},
      {"sandwich", "AVaR sandwich: AVaR_a1 <= AVaR_a2 <= (1-a1)/(1-a2) AVaR_a1",
       [](Rng& r) {
         Real a1 = uniform(r, 0, 0.99);
         Real a2 = uniform(r, 0, 0.99);
         if (a1 > a2) std::swap(a1, a2);
         const auto rep = avar_sandwich_check(a1, a2, random_step_quantile(r));
         return std::min(rep.middle - rep.lower, rep.upper - rep.middle);
       }},
      {"embedding", "comparability: ||Y||_sigma2 <= c ||Y||_sigma1",
       [](Rng& r) {
         const auto s1 = random_step_spectrum(r);
         const auto s2 = random_step_spectrum(r);
         const auto d = abs_value(random_step_quantile(r));
         const Real c = comparability_constant(s1, s2).value;
         return c * sigma_norm(s1, d) - sigma_norm(s2, d);
       }},
      {"submultiplicative", "operator norms compose: c(s1,s2) c(s2,s3) >= c(s1,s3)",
       [](Rng& r) {
         const auto s1 = random_step_spectrum(r);
         const auto s2 = random_step_spectrum(r);
         const auto s3 = random_step_spectrum(r);
         return comparability_constant(s1, s2).value * comparability_constant(s2, s3).value -
                comparability_constant(s1, s3).value;
       }},
      {"density", "step functions are dense: ||Y - s(U)||_sigma < eps",
       [](Rng& r) {
         const auto s = random_step_spectrum(r);
         const auto d = random_step_quantile(r);
         const Real eps = std::uniform_int_distribution<int>(0, 1)(r) ? Real{0.1L} : Real{0.01L};
         // strict inequality: a zero slack counts as a failure
         const Real slack = eps - step_density_approx(s, d, eps).error;
         return slack > 0 ? slack : Real{-1};
       }},
  };
}

}  // namespace

int VerifyReport::failures() const {
  int total = 0;
  for (const auto& inv : invariants) total += inv.cases - inv.passed;
  return total;
}

VerifyReport run_verify(std::uint64_t seed, int cases, Real tol) {
  VerifyReport report{seed, cases, tol, {}};
  const auto all = roster();
  for (std::size_t i = 0; i < all.size(); ++i) {
    // Independent stream per invariant, so adding one does not shift the others.
    std::uint32_t tag = 2166136261u;  // FNV-1a of the id
    for (const char* p = all[i].id; *p; ++p) tag = (tag ^ static_cast<unsigned char>(*p)) * 16777619u;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag};
    Rng rng(seq);
    InvariantResult res{all[i].id, all[i].anchor};
    for (int c = 0; c < cases; ++c) {
      const Real m = all[i].margin(rng);
      ++res.cases;
      if (m >= -tol) ++res.passed;
      if (m < res.worst_margin) {
        res.worst_margin = m;
        res.worst_case = c;
      }
    }
    report.invariants.push_back(std::move(res));
  }
  std::sort(report.invariants.begin(), report.invariants.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return report;
}

}  // namespace riskspace::cli
