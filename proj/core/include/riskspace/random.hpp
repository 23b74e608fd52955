#pragma once

#include <random>

#include "riskspace/distmodel.hpp"
#include "riskspace/spectrum.hpp"

namespace riskspace {

using Rng = std::mt19937_64;

/// Valid step spectrum with up to max_cells cells: random breakpoints, values
/// built from positive increments and scaled to unit integral.
Spectrum random_step_spectrum(Rng& rng, int max_cells = 64);

/// Step quantile with up to max_cells cells and values in [lo, hi].
StepQuantile random_step_quantile(Rng& rng, int max_cells = 64, Real lo = -10, Real hi = 10);

/// Joint law on up to max_rows rows, coordinates in [-10, 10].
PairedSample random_joint(Rng& rng, int max_rows = 64);

}  // namespace riskspace
