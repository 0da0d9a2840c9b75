// Copyright 2026 The kdiff Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kd/feasibility.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kd/error.hpp"

namespace kd {
namespace {

// Intensities above this need pulsed counter-propagating beams of ~10 ns.
constexpr double kPulsedIntensityRegime = 1e10;  // W/m^2
constexpr double kPulsedBeamDuration = 10e-9;    // s

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

double positive_number(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw DomainError("preset " + where + ": missing numeric field '" + key + "'");
  }
  const double v = obj.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("preset " + where + ": '" + key + "' must be positive");
  return v;
}

}  // namespace

RegimeReport check_regime(AngularFrequency gamma, AngularFrequency detuning, const PulseParams& pulse, Energy depth,
                          const RegimeThresholds& thresholds, const SpeciesPreset* preset) {
  RegimeReport r;
  const double delta = std::fabs(detuning.si());
  const double tau = pulse.tau().si();

  r.adiabatic_margin = delta * tau;
  r.adiabatic = r.adiabatic_margin > 1.0;
  if (!r.adiabatic) {
    r.notes.push_back("non-adiabatic: |Delta| tau = " + fmt(r.adiabatic_margin) + " <= 1");
  }

  r.emission_ratio = gamma.si() > 0.0 ? delta / gamma.si() : std::numeric_limits<double>::infinity();
  r.low_emission = r.emission_ratio > thresholds.emission_ratio;
  if (!r.low_emission) {
    r.notes.push_back("spontaneous emission not negligible: |Delta|/Gamma = " + fmt(r.emission_ratio) +
                      " <= " + fmt(thresholds.emission_ratio));
  }

  r.w = dimensionless_phase(depth, pulse.tau());
  r.depth_ok = r.w >= thresholds.w_min && r.w <= thresholds.w_max;
  if (!r.depth_ok) {
    r.notes.push_back("w = V0 tau / hbar = " + fmt(r.w) + " outside [" + fmt(thresholds.w_min) + ", " +
                      fmt(thresholds.w_max) + "]");
  }

  if (detuning.si() < 0.0) r.notes.push_back("red detuning: attractive potential (negative V0)");
  if (depth.si() < 0.0) r.notes.push_back("negative depth given; patterns use |V0|");

  if (preset != nullptr && !preset->anchors.empty()) {
    try {
      r.intensity_estimate = required_intensity(*preset, depth, detuning);
      if (r.intensity_estimate->si() > kPulsedIntensityRegime && tau > kPulsedBeamDuration) {
        r.notes.push_back("required intensity " + fmt(r.intensity_estimate->si()) +
                          " W/m^2 typically needs pulsed counter-propagating beams (~10 ns), shorter than tau");
      }
    } catch (const DomainError& e) {
      r.notes.push_back(std::string("no intensity estimate: ") + e.what());
    }
  }
  return r;
}

RegimeReport check_regime(const TransitionSpec& spec, const PulseParams& pulse, Energy depth,
                          const RegimeThresholds& thresholds, const SpeciesPreset* preset) {
  return check_regime(spec.gamma(), spec.detuning(), pulse, depth, thresholds, preset);
}

std::pair<Intensity, Intensity> required_intensity_range(const SpeciesPreset& preset, Energy target_depth,
                                                         AngularFrequency detuning) {
  if (preset.anchors.empty()) throw DomainError("preset '" + preset.name + "' has no intensity anchors");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& a : preset.anchors) {
    const double i = a.intensity.si() * (std::fabs(target_depth.si()) / a.depth.si()) *
                     (std::fabs(detuning.si()) / std::fabs(a.detuning.si()));
    lo = std::min(lo, i);
    hi = std::max(hi, i);
  }
  return {Intensity{lo}, Intensity{hi}};
}

Intensity required_intensity(const SpeciesPreset& preset, Energy target_depth, AngularFrequency detuning) {
  return required_intensity_range(preset, target_depth, detuning).first;
}

std::vector<SpeciesPreset> parse_presets(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("preset file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc.at("version").is_number_integer()) {
    throw DomainError("preset file: missing integer 'version'");
  }
  if (doc.at("version").get<int>() != kPresetSchemaVersion) {
    throw DomainError("preset file: unsupported version " + std::to_string(doc.at("version").get<int>()));
  }
  if (!doc.contains("species") || !doc.at("species").is_array()) {
    throw DomainError("preset file: missing 'species' array");
  }

  std::vector<SpeciesPreset> out;
  for (const auto& s : doc.at("species")) {
    if (!s.contains("name") || !s.at("name").is_string()) throw DomainError("preset entry without a name");
    SpeciesPreset p;
    p.name = s.at("name").get<std::string>();
    p.gamma = AngularFrequency{positive_number(s, "gamma_s^-1", p.name)};
    p.default_detuning = AngularFrequency{positive_number(s, "default_detuning_s^-1", p.name)};
    if (s.contains("anchors")) {
      for (const auto& a : s.at("anchors")) {
        p.anchors.push_back({energy_from_ev(positive_number(a, "depth_eV", p.name)),
                             Intensity{positive_number(a, "intensity_W_m2", p.name)},
                             AngularFrequency{positive_number(a, "detuning_s^-1", p.name)}});
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SpeciesPreset> load_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read preset file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presets(buf.str());
}

const SpeciesPreset& find_preset(const std::vector<SpeciesPreset>& presets, const std::string& name) {
  const auto key = lower(name);
  for (const auto& p : presets) {
    if (lower(p.name) == key) return p;
  }
  throw DomainError("unknown species preset '" + name + "'");
}

}  // namespace kd
