#include "cli.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json_util.hpp"
#include "riskspace/dualspace.hpp"
#include "riskspace/embed.hpp"
#include "riskspace/extremal.hpp"
#include "riskspace/io.hpp"
#include "riskspace/kusuoka.hpp"
#include "riskspace/riskcore.hpp"
#include "verify.hpp"

namespace riskspace::cli {
namespace {

struct Outcome {
  json doc;
  int code = kExitOk;
};

struct Globals {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int indent = 2;
};

json spectrum_json(const Spectrum& s) {
  switch (s.kind()) {
    case SpectrumKind::avar:
      return {{"kind", "avar"}, {"alpha", num(s.avar_level())}};
    case SpectrumKind::power_sqrt:
      return {{"kind", "power_sqrt"}};
    case SpectrumKind::step:
      return {{"kind", "step"}, {"breakpoints", num_array(s.breakpoints())}, {"values", num_array(s.cell_values())}};
    case SpectrumKind::general:
      break;
  }
  return {{"kind", "general"}, {"description", s.describe()}};
}

json quantile_json(const StepQuantile& d) {
  return {{"breakpoints", num_array(d.breakpoints())}, {"values", num_array(d.values())}};
}

Outcome run_eval(const std::string& spectrum_path, const std::string& samples_path, bool norm,
                 const std::string& method, const Globals& g) {
  const Spectrum s = load_spectrum(spectrum_path);
  StepQuantile d = load_samples(samples_path);
  if (norm) d = abs_value(d);
  const Real by_quantile = spectral_risk(s, d);
  const Real by_cdf = spectral_risk_via_cdf(s, d);
  Outcome o;
  if (method == "quantile") {
    o.doc = {{"value", num(by_quantile)}, {"method", to_string(RiskMethod::quantile_integral)}, {"residual", 0.0}};
  } else if (method == "cdf") {
    o.doc = {{"value", num(by_cdf)}, {"method", to_string(RiskMethod::cdf_tail_integral)}, {"residual", 0.0}};
  } else {
    const Real residual = std::isinf(by_quantile) && by_quantile == by_cdf ? 0 : std::fabs(by_quantile - by_cdf);
    o.doc = {{"value", num(by_quantile)},
             {"method", "both"},
             {"residual", num(residual)},
             {to_string(RiskMethod::quantile_integral), num(by_quantile)},
             {to_string(RiskMethod::cdf_tail_integral), num(by_cdf)}};
    if (residual > g.tol) o.code = kExitViolation;
  }
  o.doc["norm"] = norm;
  return o;
}

Outcome run_dual_norm(const std::string& spectrum_path, const std::string& samples_path) {
  const Spectrum s = load_spectrum(spectrum_path);
  const StepQuantile z = load_samples(samples_path);
  const DualNorm n = dual_norm(z, s);
  return {{{"value", num(n.value)},
           {"attaining_alpha", num(n.attaining_alpha)},
           {"limit_verified", n.limit_verified},
           {"upper_bound", num(dual_upper_bound(z, s))}}};
}

Outcome run_dominate(const std::string& spectrum_path, const std::string& samples_path, double eta) {
  const Spectrum s = load_spectrum(spectrum_path);
  const StepQuantile z = load_samples(samples_path);
  const auto cert = dominates(z, s, eta);
  return {{{"holds", cert.holds}, {"eta", eta}, {"witness_alpha", num(cert.witness_alpha)}, {"margin", num(cert.margin)}},
          cert.holds ? kExitOk : kExitViolation};
}

Outcome run_to_measure(const std::string& spectrum_path, int cells) {
  Spectrum s = load_spectrum(spectrum_path);
  json doc;
  if (!s.is_step()) {
    if (cells <= 0) throw InputError("to-measure needs a step spectrum; pass --cells to approximate");
    auto approx = step_approx(s, cells);
    doc["renormalization"] = num(approx.renormalization);
    s = approx.spectrum;
  }
  json atoms = json::array();
  const KusuokaMeasure mu = mu_from_sigma(s);
  for (const auto& a : mu.atoms()) atoms.push_back({num(a.level), num(a.weight)});
  doc["atoms"] = atoms;
  return {doc};
}

Outcome run_to_spectrum(const std::string& measure_path) {
  const KusuokaMeasure mu = load_measure(measure_path);
  if (mu.has_atom_at_one()) throw InputError("the measure has an atom at 1; no spectral density exists");
  return {spectrum_json(sigma_from_mu(mu))};
}

Outcome run_embed(const std::string& from, const std::string& to, const std::string& set_from,
                  const std::string& set_to) {
  if (!set_from.empty() || !set_to.empty()) {
    if (set_from.empty() || set_to.empty()) throw InputError("--set-from and --set-to go together");
    const auto s1 = load_spectrum_set(set_from);
    const auto s2 = load_spectrum_set(set_to);
    return {{{"constant", num(identity_norm(s1, s2))}, {"from_size", s1.size()}, {"to_size", s2.size()}}};
  }
  if (from.empty() || to.empty()) throw InputError("embed needs --from and --to (or --set-from and --set-to)");
  const auto c = comparability_constant(load_spectrum(from), load_spectrum(to));
  return {{{"constant", num(c.value)},
           {"attaining_alpha", num(c.attaining_alpha)},
           {"limit_verified", c.limit_verified}}};
}

Outcome run_escape(const std::string& spectrum_path, double q, int depth, const std::string& mode,
                   const Globals& g) {
  const Spectrum s = load_spectrum(spectrum_path);
  Outcome o;
  json rows = json::array();
  if (mode == "linf") {
    const auto e = linf_escape(s, depth);
    for (int n = 1; n <= depth; ++n) rows.push_back({{"n", n}, {"t", num(e.band_edges[n])}});
    o.doc = {{"mode", "linf"},       {"depth", depth},          {"risk", num(e.risk)},
             {"risk_bound", num(e.risk_bound)}, {"esssup", num(e.esssup)}, {"bands", rows}};
    if (e.risk > e.risk_bound + g.tol) o.code = kExitViolation;
    return o;
  }
  const auto e = lp_escape(s, q, depth);
  Real predicted = 0;
  for (int n = 1; n <= e.represented_depth; ++n) {
    predicted += e.k / zeta(e.p + 1) * std::pow(Real(n), -e.p);
    rows.push_back({{"n", n}, {"t", num(e.band_edges[n])}, {"predicted_risk", num(predicted)}});
  }
  o.doc = {{"mode", "lp"},
           {"q", q},
           {"p", num(e.p)},
           {"sigma_q_power", num(e.k)},
           {"requested_depth", e.requested_depth},
           {"represented_depth", e.represented_depth},
           {"risk", num(e.risk)},
           {"predicted_risk", num(e.predicted_risk)},
           {"limit_risk", num(e.limit_risk)},
           {"lp_partial_p", num(e.lp_partial_p)},
           {"bands", rows}};
  if (e.risk > e.limit_risk + 1e-6) o.code = kExitViolation;
  return o;
}

Outcome run_diverge(const std::string& spectrum_path, const std::string& samples_path, double target,
                    const Globals& g) {
  const Spectrum s = load_spectrum(spectrum_path);
  const DivergenceDemo demo = samples_path.empty()
                                  ? l1_divergence_demo(heavy_tail_rule(), s, target)
                                  : l1_divergence_demo(load_samples(samples_path), s, target);
  Outcome o;
  json rows = json::array();
  for (const auto& r : demo.rows) {
    rows.push_back({{"n", num(r.n)}, {"l1", num(r.l1)}, {"sigma_norm", num(r.sigma_norm)}});
    if (r.sigma_norm < r.l1 - g.tol) o.code = kExitViolation;
  }
  o.doc = {{"source", samples_path.empty() ? "1/(1-u), dyadic" : samples_path},
           {"target", target},
           {"exceeded", demo.exceeded},
           {"vacuous", demo.vacuous},
           {"rows", rows}};
  return o;
}

Outcome run_approx(const std::string& spectrum_path, const std::string& samples_path, double eps) {
  const Spectrum s = load_spectrum(spectrum_path);
  const StepQuantile d = load_samples(samples_path);
  const auto a = step_density_approx(s, d, eps);
  return {{{"eps", eps},
           {"error", num(a.error)},
           {"steps", a.steps},
           {"input_steps", d.size()},
           {"t0", num(a.t0)},
           {"t1", num(a.t1)},
           {"step", quantile_json(a.step)}},
          a.error < eps ? kExitOk : kExitViolation};
}

Outcome run_verify_cmd(int cases, const Globals& g) {
  if (cases < 1) throw InputError("--cases must be >= 1");
  const VerifyReport rep = run_verify(g.seed, cases, g.tol);
  json inv = json::array();
  for (const auto& r : rep.invariants) {
    inv.push_back({{"id", r.id},
                   {"anchor", r.anchor},
                   {"cases", r.cases},
                   {"passed", r.passed},
                   {"worst_margin", num(r.worst_margin)},
                   {"worst_case", r.worst_case}});
  }
  const int failures = rep.failures();
  return {{{"seed", rep.seed}, {"cases", rep.cases}, {"tol", g.tol}, {"failures", failures}, {"invariants", inv}},
          failures == 0 ? kExitOk : kExitViolation};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral risk measures, their norms, duals and embeddings", "riskspace"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "tolerance for reported violations")->default_val(1e-9);
  app.add_option("--seed", g.seed, "random seed")->default_val(0);
  app.add_option("--json-indent", g.indent, "JSON indentation, -1 for one line")->default_val(2);

  std::string spectrum;
  std::string samples;
  std::function<Outcome()> action;

  auto* eval = app.add_subcommand("eval", "spectral risk of a sample");
  bool norm_flag = false;
  std::string method = "quantile";
  eval->add_option("--spectrum", spectrum)->required();
  eval->add_option("--samples", samples)->required();
  eval->add_flag("--norm", norm_flag, "evaluate ||Y||_sigma instead");
  eval->add_option("--method", method)->check(CLI::IsMember({"quantile", "cdf", "both"}));
  eval->callback([&] { action = [&] { return run_eval(spectrum, samples, norm_flag, method, g); }; });

  auto* norm = app.add_subcommand("norm", "||Y||_sigma of a sample");
  norm->add_option("--spectrum", spectrum)->required();
  norm->add_option("--samples", samples)->required();
  norm->add_option("--method", method)->check(CLI::IsMember({"quantile", "cdf", "both"}));
  norm->callback([&] { action = [&] { return run_eval(spectrum, samples, true, method, g); }; });

  auto* dual = app.add_subcommand("dual-norm", "gauge norm ||Z||*_sigma");
  dual->add_option("--spectrum", spectrum)->required();
  dual->add_option("--samples", samples)->required();
  dual->callback([&] { action = [&] { return run_dual_norm(spectrum, samples); }; });

  auto* dom = app.add_subcommand("dominate", "check |Z| dominated by eta sigma");
  double eta = 1;
  dom->add_option("--spectrum", spectrum)->required();
  dom->add_option("--samples", samples)->required();
  dom->add_option("--eta", eta)->default_val(1.0);
  dom->callback([&] { action = [&] { return run_dominate(spectrum, samples, eta); }; });

  auto* kus = app.add_subcommand("kusuoka", "convert between spectra and mixing measures");
  kus->require_subcommand(1);
  auto* to_measure = kus->add_subcommand("to-measure", "mixing measure of a step spectrum");
  int cells = 0;
  to_measure->add_option("--spectrum", spectrum)->required();
  to_measure->add_option("--cells", cells, "step-approximate a non-step spectrum first");
  to_measure->callback([&] { action = [&] { return run_to_measure(spectrum, cells); }; });
  auto* to_spectrum = kus->add_subcommand("to-spectrum", "spectrum of a mixing measure");
  std::string measure;
  to_spectrum->add_option("--measure", measure)->required();
  to_spectrum->callback([&] { action = [&] { return run_to_spectrum(measure); }; });

  auto* emb = app.add_subcommand("embed", "comparability constant between spaces");
  std::string from, to, set_from, set_to;
  emb->add_option("--from", from);
  emb->add_option("--to", to);
  emb->add_option("--set-from", set_from);
  emb->add_option("--set-to", set_to);
  emb->callback([&] { action = [&] { return run_embed(from, to, set_from, set_to); }; });

  auto* esc = app.add_subcommand("escape", "variables in L_sigma outside L^p or L^inf");
  double q = 1.5;
  int depth = 40;
  std::string mode = "lp";
  esc->add_option("--spectrum", spectrum)->required();
  esc->add_option("--q", q)->default_val(1.5);
  esc->add_option("--depth", depth)->default_val(40)->check(CLI::PositiveNumber);
  esc->add_option("--mode", mode)->check(CLI::IsMember({"lp", "linf"}));
  esc->callback([&] { action = [&] { return run_escape(spectrum, q, depth, mode, g); }; });

  auto* div = app.add_subcommand("diverge", "truncations of a heavy tail beyond L^1");
  double target = 10;
  div->add_option("--spectrum", spectrum)->required();
  div->add_option("--target", target)->default_val(10.0);
  div->add_option("--samples", samples, "use a sample instead of the 1/(1-u) tail");
  div->callback([&] { action = [&] { return run_diverge(spectrum, samples, target, g); }; });

  auto* apx = app.add_subcommand("approx", "step-function approximation within eps");
  double eps = 0.1;
  apx->add_option("--spectrum", spectrum)->required();
  apx->add_option("--samples", samples)->required();
  apx->add_option("--eps", eps)->default_val(0.1);
  apx->callback([&] { action = [&] { return run_approx(spectrum, samples, eps); }; });

  auto* ver = app.add_subcommand("verify", "run the property suite on random instances");
  int cases = 100;
  ver->add_option("--cases", cases)->default_val(100);
  ver->callback([&] { action = [&] { return run_verify_cmd(cases, g); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (!action) {
    err << "no command given\n";
    return kExitUsage;
  }
  try {
    const Outcome o = action();
    out << o.doc.dump(g.indent < 0 ? -1 : g.indent) << '\n';
    return o.code;
  } catch (const std::exception& e) {
    // Malformed files, invalid spectra and out-of-domain parameters alike.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace riskspace::cli
