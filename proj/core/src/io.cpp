#include "riskspace/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace riskspace {
namespace {

using nlohmann::json;

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

bool parse_number(const std::string& field, Real& out) {
  const std::string f = trim(field);
  if (f.empty()) return false;
  char* end = nullptr;
  out = std::strtold(f.c_str(), &end);
  return end == f.c_str() + f.size();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), line_of(text, e.byte));
  }
}

Real number_at(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string("expected a number for ") + what);
  return j.get<Real>();
}

std::vector<Real> numbers(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) throw InputError(std::string("missing array \"") + key + "\"");
  std::vector<Real> out;
  for (const auto& v : doc[key]) out.push_back(number_at(v, key));
  return out;
}

}  // namespace

StepQuantile read_samples_csv(std::istream& in) {
  std::vector<Real> values;
  std::vector<Real> weights;
  std::string line;
  int lineno = 0;
  int columns = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.empty() || fields.size() > 2) throw InputError("expected `value` or `value,weight`", lineno);

    Real v = 0;
    Real w = 1;
    const bool numeric = parse_number(fields[0], v) && (fields.size() == 1 || parse_number(fields[1], w));
    if (!numeric) {
      if (columns == 0 && values.empty()) {
        columns = -static_cast<int>(fields.size());  // header seen
        continue;
      }
      throw InputError("non-numeric field", lineno);
    }
    const int n = static_cast<int>(fields.size());
    if (columns > 0 && n != columns) throw InputError("inconsistent column count", lineno);
    if (columns < 0 && n != -columns) throw InputError("column count differs from header", lineno);
    columns = n;
    if (!std::isfinite(v)) throw InputError("value must be finite", lineno);
    if (!(w > 0) || !std::isfinite(w)) throw InputError("weight must be positive", lineno);
    values.push_back(v);
    weights.push_back(w);
  }
  if (values.empty()) throw InputError("no observations");
  return from_samples(values, weights);
}

StepQuantile load_samples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_samples_csv(in);
}

Spectrum parse_spectrum_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw InputError("spectrum needs a string field \"kind\"");
  }
  const auto kind = doc["kind"].get<std::string>();
  Spectrum s = [&] {
    if (kind == "avar") {
      if (!doc.contains("alpha")) throw InputError("avar spectrum needs \"alpha\"");
      return Spectrum::avar(number_at(doc["alpha"], "alpha"));
    }
    if (kind == "power_sqrt") return Spectrum::power_sqrt();
    if (kind == "step") {
      auto bps = numbers(doc, "breakpoints");
      auto vals = numbers(doc, "values");
      if (bps.size() != vals.size() + 1) throw InputError("step spectrum: need len(breakpoints) = len(values) + 1");
      return Spectrum::step(std::move(bps), std::move(vals));
    }
    throw InputError("unknown spectrum kind \"" + kind + "\"");
  }();
  if (!s.valid()) {
    const auto& v = s.violations().front();
    throw InputError("invalid spectrum (" + v.property + "): " + v.detail);
  }
  return s;
}

Spectrum load_spectrum(const std::filesystem::path& path) { return parse_spectrum_json(read_file(path)); }

KusuokaMeasure parse_measure_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array()) {
    throw InputError("measure needs an array \"atoms\"");
  }
  std::vector<KusuokaMeasure::Atom> atoms;
  for (const auto& a : doc["atoms"]) {
    if (!a.is_array() || a.size() != 2) throw InputError("each atom must be [level, weight]");
    atoms.push_back({number_at(a[0], "level"), number_at(a[1], "weight")});
  }
  try {
    return KusuokaMeasure(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

KusuokaMeasure load_measure(const std::filesystem::path& path) { return parse_measure_json(read_file(path)); }

SpectrumSet load_spectrum_set(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no *.json spectra in " + dir.string());
  std::vector<Spectrum> members;
  for (const auto& f : files) {
    try {
      members.push_back(load_spectrum(f));
    } catch (const InputError& e) {
      throw InputError(f.filename().string() + ": " + e.what());
    }
  }
  return SpectrumSet(std::move(members));
}

}  // namespace riskspace
