#include "riskspace/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace riskspace {
namespace {

std::string fmt(Real x) {
  std::ostringstream os;
  os.precision(12);
  os << static_cast<double>(x);
  return os.str();
}

// Index k with breakpoints[k] <= u < breakpoints[k+1], clamped to a cell.
std::size_t cell_of(std::span<const Real> bps, Real u) {
  auto it = std::upper_bound(bps.begin(), bps.end(), u);
  auto k = static_cast<std::ptrdiff_t>(it - bps.begin()) - 1;
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(bps.size()) - 2);
  return static_cast<std::size_t>(k);
}

Real quadrature(const std::function<Real(Real)>& f, Real a, Real b) {
  if (b <= a) return 0;
  boost::math::quadrature::tanh_sinh<Real> integrator;
  return integrator.integrate(f, a, b, 1e-12L);
}

}  // namespace

std::vector<Real> geometric_mesh(int count) {
  std::vector<Real> mesh;
  mesh.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 1; k <= count; ++k) mesh.push_back(1 - std::ldexp(Real{1}, -k));
  return mesh;
}

Spectrum Spectrum::step(std::vector<Real> breakpoints, std::vector<Real> values) {
  Spectrum s;
  s.kind_ = SpectrumKind::step;
  s.breakpoints_ = std::move(breakpoints);
  s.values_ = std::move(values);
  s.check_step();
  return s;
}

Spectrum Spectrum::avar(Real alpha) {
  Spectrum s;
  s.kind_ = SpectrumKind::avar;
  s.alpha_ = alpha;
  if (!(alpha >= 0 && alpha < 1)) {
    s.violations_.push_back({"structure", alpha, "AVaR level must lie in [0,1)"});
    s.breakpoints_ = {0, 1};
    s.values_ = {1};
  } else if (alpha == 0) {
    s.breakpoints_ = {0, 1};
    s.values_ = {1};
  } else {
    s.breakpoints_ = {0, alpha, 1};
    s.values_ = {0, 1 / (1 - alpha)};
  }
  s.build_tails();
  return s;
}

Spectrum Spectrum::power_sqrt() {
  Spectrum s;
  s.kind_ = SpectrumKind::power_sqrt;
  return s;
}

Spectrum Spectrum::general(GeneralSpectrum g) {
  Spectrum s;
  s.kind_ = SpectrumKind::general;
  s.general_ = std::move(g);
  s.check_general();
  return s;
}

void Spectrum::check_step() {
  const auto& b = breakpoints_;
  const auto& c = values_;
  if (b.size() < 2 || b.size() != c.size() + 1) {
    violations_.push_back({"structure", 0, "need n+1 breakpoints for n >= 1 values"});
    return;
  }
  if (b.front() != 0 || b.back() != 1) {
    violations_.push_back({"structure", b.front(), "breakpoints must start at 0 and end at 1"});
    return;
  }
  for (std::size_t k = 1; k < b.size(); ++k) {
    if (!(b[k] > b[k - 1])) {
      violations_.push_back({"structure", b[k], "breakpoints must be strictly increasing"});
      return;
    }
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!std::isfinite(c[k])) {
      violations_.push_back({"structure", b[k], "non-finite value"});
      return;
    }
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] < 0) {
      violations_.push_back({"nonnegativity", b[k], "sigma = " + fmt(c[k]) + " < 0"});
    }
  }
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k] < c[k - 1] - kTol) {
      violations_.push_back(
          {"monotonicity", b[k], "sigma drops from " + fmt(c[k - 1]) + " to " + fmt(c[k])});
    }
  }
  Real integral = 0;
  for (std::size_t k = 0; k < c.size(); ++k) integral += c[k] * (b[k + 1] - b[k]);
  if (std::fabs(integral - 1) > kNormTol) {
    violations_.push_back({"normalization", 0, "integral is " + fmt(integral) + ", not 1"});
  } else if (integral != 1) {
    normalization_factor_ = 1 / integral;
    for (auto& v : values_) v *= normalization_factor_;
  }
  // Tolerated tiny decreases are flattened so the tail stays concave.
  for (std::size_t k = 1; k < values_.size(); ++k) values_[k] = std::max(values_[k], values_[k - 1]);
  build_tails();
}

void Spectrum::check_general() {
  const auto& g = *general_;
  if (!g.density || !g.tail) {
    violations_.push_back({"structure", 0, "general spectrum needs density and tail evaluators"});
    return;
  }
  constexpr int kMesh = 4096;
  Real previous = 0;
  for (int i = 0; i < kMesh; ++i) {
    const Real u = 1 - std::exp2(-40.0L * i / (kMesh - 1));
    const Real v = g.density(u);
    if (!std::isfinite(v)) {
      violations_.push_back({"structure", u, "non-finite density"});
      return;
    }
    if (v < 0) {
      violations_.push_back({"nonnegativity", u, "sigma = " + fmt(v) + " < 0"});
      return;
    }
    if (i > 0 && v < previous - kTol * std::max(Real{1}, previous)) {
      violations_.push_back({"monotonicity", u, "sigma decreases on the validation mesh"});
      return;
    }
    previous = v;
  }
  const Real s0 = g.tail(0);
  if (std::fabs(s0 - 1) > kNormTol) {
    violations_.push_back({"normalization", 0, "S(0) = " + fmt(s0) + ", not 1"});
  }
  const Real s1 = g.tail(1);
  if (std::fabs(s1) > kNormTol) {
    violations_.push_back({"normalization", 1, "S(1) = " + fmt(s1) + ", not 0"});
  }
}

void Spectrum::build_tails() {
  const std::size_t n = values_.size();
  tails_.assign(n + 1, 0);
  for (std::size_t k = n; k-- > 0;) {
    tails_[k] = tails_[k + 1] + values_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
  }
}

std::string Spectrum::describe() const {
  switch (kind_) {
    case SpectrumKind::step:
      return "step(" + std::to_string(values_.size()) + " cells)";
    case SpectrumKind::avar:
      return "avar(" + fmt(alpha_) + ")";
    case SpectrumKind::power_sqrt:
      return "power_sqrt";
    case SpectrumKind::general:
      return "general(" + general_->name + ")";
  }
  return "unknown";
}

Real Spectrum::density(Real u) const {
  switch (kind_) {
    case SpectrumKind::step:
    case SpectrumKind::avar:
      return values_[cell_of(breakpoints_, u)];
    case SpectrumKind::power_sqrt:
      return 1 / (2 * std::sqrt(1 - u));
    case SpectrumKind::general:
      return general_->density(u);
  }
  return 0;
}

Real Spectrum::upper_value() const {
  switch (kind_) {
    case SpectrumKind::step:
    case SpectrumKind::avar:
      return values_.back();
    case SpectrumKind::power_sqrt:
      return kInf;
    case SpectrumKind::general:
      if (general_->asymptotics) {
        return general_->asymptotics->order < 1 ? kInf : general_->asymptotics->coefficient;
      }
      return general_->density(1 - std::ldexp(Real{1}, -60));
  }
  return kInf;
}

Real Spectrum::tail(Real alpha) const {
  if (alpha >= 1) return 0;
  if (alpha <= 0) alpha = 0;
  switch (kind_) {
    case SpectrumKind::step: {
      const std::size_t k = cell_of(breakpoints_, alpha);
      return tails_[k + 1] + values_[k] * (breakpoints_[k + 1] - alpha);
    }
    case SpectrumKind::avar:
      return alpha <= alpha_ ? Real{1} : (1 - alpha) / (1 - alpha_);
    case SpectrumKind::power_sqrt:
      return std::sqrt(1 - alpha);
    case SpectrumKind::general:
      return general_->tail(alpha);
  }
  return 0;
}

Real Spectrum::mass(Real a, Real b) const {
  a = std::clamp<Real>(a, 0, 1);
  b = std::clamp<Real>(b, 0, 1);
  if (b <= a) return 0;
  switch (kind_) {
    case SpectrumKind::step: {
      Real total = 0;
      for (std::size_t k = cell_of(breakpoints_, a); k < values_.size(); ++k) {
        const Real lo = std::max(a, breakpoints_[k]);
        const Real hi = std::min(b, breakpoints_[k + 1]);
        if (hi <= lo) break;
        total += values_[k] * (hi - lo);
      }
      return total;
    }
    case SpectrumKind::avar: {
      const Real lo = std::max(a, alpha_);
      return b > lo ? (b - lo) / (1 - alpha_) : Real{0};
    }
    case SpectrumKind::power_sqrt:
      // sqrt(1-a) - sqrt(1-b) without cancellation
      return (b - a) / (std::sqrt(1 - a) + std::sqrt(1 - b));
    case SpectrumKind::general:
      return general_->tail(a) - general_->tail(b);
  }
  return 0;
}

Real Spectrum::power_integral(Real q, Real t) const {
  t = std::clamp<Real>(t, 0, 1);
  switch (kind_) {
    case SpectrumKind::step:
    case SpectrumKind::avar: {
      Real total = 0;
      for (std::size_t k = 0; k < values_.size() && breakpoints_[k] < t; ++k) {
        const Real hi = std::min(t, breakpoints_[k + 1]);
        if (values_[k] > 0) total += std::pow(values_[k], q) * (hi - breakpoints_[k]);
      }
      return total;
    }
    case SpectrumKind::power_sqrt: {
      const Real scale = std::pow(Real{2}, -q);
      if (t >= 1) return q < 2 ? scale / (1 - q / 2) : kInf;
      if (q == 2) return -scale * std::log1p(-t);
      return scale * (1 - std::pow(1 - t, 1 - q / 2)) / (1 - q / 2);
    }
    case SpectrumKind::general: {
      if (t >= 1 && q >= general_->integrability) return kInf;
      const auto& f = general_->density;
      auto integrand = [&](Real u) { return std::pow(f(u), q); };
      // Near 1 the abscissas of a singular density are not resolvable, so the last
      // sliver comes from the declared asymptotics sigma ~ c o (1-u)^{o-1}.
      const Real cut = 1 - std::ldexp(Real{1}, -40);
      const auto& asym = general_->asymptotics;
      if (!asym || t <= cut) return quadrature(integrand, 0, t);
      const Real e = q * (asym->order - 1) + 1;
      if (e <= 0) return kInf;
      const Real scale = std::pow(asym->coefficient * asym->order, q) / e;
      return quadrature(integrand, 0, cut) + scale * (std::pow(1 - cut, e) - std::pow(1 - t, e));
    }
  }
  return 0;
}

std::optional<TailAsymptotics> Spectrum::asymptotics() const {
  switch (kind_) {
    case SpectrumKind::step:
    case SpectrumKind::avar:
      return TailAsymptotics{1, values_.back()};
    case SpectrumKind::power_sqrt:
      return TailAsymptotics{0.5L, 1};
    case SpectrumKind::general:
      return general_->asymptotics;
  }
  return std::nullopt;
}

Real Spectrum::integrability() const {
  switch (kind_) {
    case SpectrumKind::step:
    case SpectrumKind::avar:
      return kInf;
    case SpectrumKind::power_sqrt:
      return 2;
    case SpectrumKind::general:
      return general_->integrability;
  }
  return kInf;
}

void Spectrum::require_valid() const {
  if (valid()) return;
  std::ostringstream os;
  os << "invalid spectrum " << describe() << ":";
  for (const auto& v : violations_) {
    os << " " << v.property << " at u=" << fmt(v.witness) << " (" << v.detail << ");";
  }
  throw std::invalid_argument(os.str());
}

std::vector<Violation> validate(const Spectrum& sigma) { return sigma.violations(); }

Real tail_weight(const Spectrum& sigma, Real alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw std::domain_error("tail_weight: alpha must lie in [0,1]");
  sigma.require_valid();
  return sigma.tail(alpha);
}

Real lq_norm(const Spectrum& sigma, Real q) {
  if (!(q >= 1)) throw std::domain_error("lq_norm: q must be >= 1");
  sigma.require_valid();
  switch (sigma.kind()) {
    case SpectrumKind::step: {
      const auto c = sigma.cell_values();
      const auto b = sigma.breakpoints();
      if (std::isinf(q)) return c.back();
      Real total = 0;
      for (std::size_t k = 0; k < c.size(); ++k) total += std::pow(c[k], q) * (b[k + 1] - b[k]);
      return std::pow(total, 1 / q);
    }
    case SpectrumKind::avar: {
      const Real rest = 1 - sigma.avar_level();
      return std::isinf(q) ? 1 / rest : std::pow(rest, 1 / q - 1);
    }
    case SpectrumKind::power_sqrt:
      if (q >= 2) return kInf;
      return 0.5L * std::pow(2 / (2 - q), 1 / q);
    case SpectrumKind::general: {
      if (q >= sigma.integrability()) return kInf;
      if (std::isinf(q)) return sigma.upper_value();
      return std::pow(sigma.power_integral(q, 1), 1 / q);
    }
  }
  return kInf;
}

StepApproximation step_approx(const Spectrum& sigma, int n) {
  if (n < 1) throw std::domain_error("step_approx: n must be >= 1");
  sigma.require_valid();
  if (sigma.is_step()) return {sigma, 1};
  std::vector<Real> bps;
  std::vector<Real> vals;
  for (int k = 0; k < n; ++k) {
    const Real left = 1 - std::ldexp(Real{1}, -k);
    bps.push_back(left);
    vals.push_back(sigma.density(left));
  }
  bps.push_back(1);
  Real integral = 0;
  for (std::size_t k = 0; k < vals.size(); ++k) integral += vals[k] * (bps[k + 1] - bps[k]);
  const Real factor = 1 / integral;
  for (auto& v : vals) v *= factor;
  return {Spectrum::step(std::move(bps), std::move(vals)), factor};
}

}  // namespace riskspace
