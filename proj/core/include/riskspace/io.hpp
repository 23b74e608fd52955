#pragma once

#include <filesystem>
#include <istream>
#include <string_view>

#include "riskspace/distmodel.hpp"
#include "riskspace/kusuoka.hpp"
#include "riskspace/spectrum.hpp"

namespace riskspace {

// All readers throw InputError (with a line number where one applies).

/// One observation per row, `value` or `value,weight`. A non-numeric first row
/// is taken as a header. Blank lines are skipped; CRLF is accepted.
StepQuantile read_samples_csv(std::istream& in);
StepQuantile load_samples(const std::filesystem::path& path);

/// {"kind":"avar","alpha":a} | {"kind":"power_sqrt"} |
/// {"kind":"step","breakpoints":[...],"values":[...]}
Spectrum parse_spectrum_json(std::string_view text);
Spectrum load_spectrum(const std::filesystem::path& path);

/// {"atoms":[[level, weight], ...]}
KusuokaMeasure parse_measure_json(std::string_view text);
KusuokaMeasure load_measure(const std::filesystem::path& path);

/// Every *.json spectrum in the directory, in file-name order.
SpectrumSet load_spectrum_set(const std::filesystem::path& dir);

}  // namespace riskspace
