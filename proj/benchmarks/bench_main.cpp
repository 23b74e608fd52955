#include <benchmark/benchmark.h>

#include "riskspace/dualspace.hpp"
#include "riskspace/embed.hpp"
#include "riskspace/extremal.hpp"
#include "riskspace/random.hpp"
#include "riskspace/riskcore.hpp"

using namespace riskspace;

namespace {

void BM_SpectralRisk(benchmark::State& state) {
  Rng rng(1);
  const auto cells = static_cast<int>(state.range(0));
  const auto s = random_step_spectrum(rng, cells);
  const auto d = random_step_quantile(rng, cells);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_risk(s, d));
}
BENCHMARK(BM_SpectralRisk)->RangeMultiplier(8)->Range(8, 4096);

void BM_SigmaNormPowerSqrt(benchmark::State& state) {
  Rng rng(2);
  const auto d = random_step_quantile(rng, static_cast<int>(state.range(0)));
  const auto s = Spectrum::power_sqrt();
  for (auto _ : state) benchmark::DoNotOptimize(sigma_norm(s, d));
}
BENCHMARK(BM_SigmaNormPowerSqrt)->RangeMultiplier(8)->Range(8, 4096);

void BM_DualNorm(benchmark::State& state) {
  Rng rng(3);
  const auto cells = static_cast<int>(state.range(0));
  const auto s = random_step_spectrum(rng, cells);
  const auto z = random_step_quantile(rng, cells);
  for (auto _ : state) benchmark::DoNotOptimize(dual_norm(z, s));
}
BENCHMARK(BM_DualNorm)->RangeMultiplier(8)->Range(8, 4096);

void BM_ComparabilityStep(benchmark::State& state) {
  Rng rng(4);
  const auto cells = static_cast<int>(state.range(0));
  const auto s1 = random_step_spectrum(rng, cells);
  const auto s2 = random_step_spectrum(rng, cells);
  for (auto _ : state) benchmark::DoNotOptimize(comparability_constant(s1, s2));
}
BENCHMARK(BM_ComparabilityStep)->RangeMultiplier(8)->Range(8, 4096);

void BM_ComparabilityPowerSqrt(benchmark::State& state) {
  const auto s1 = Spectrum::avar(0.5L);
  const auto s2 = Spectrum::power_sqrt();
  for (auto _ : state) benchmark::DoNotOptimize(comparability_constant(s1, s2));
}
BENCHMARK(BM_ComparabilityPowerSqrt);

void BM_LpEscape(benchmark::State& state) {
  const auto s = Spectrum::power_sqrt();
  const auto depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lp_escape(s, 1.5L, depth));
}
BENCHMARK(BM_LpEscape)->Arg(10)->Arg(100)->Arg(1000);

void BM_StepDensityApprox(benchmark::State& state) {
  Rng rng(5);
  const auto s = random_step_spectrum(rng, 256);
  const auto d = random_step_quantile(rng, 256);
  for (auto _ : state) benchmark::DoNotOptimize(step_density_approx(s, d, 0.01L));
}
BENCHMARK(BM_StepDensityApprox);

}  // namespace

BENCHMARK_MAIN();
