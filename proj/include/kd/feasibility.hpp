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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kd/core.hpp"

namespace kd {

struct RegimeThresholds {
  /// Delta / Gamma above which spontaneous emission counts as negligible.
  double emission_ratio = 100.0;
  /// Band of w = V0 tau / hbar treated as "of the order of unity".
  double w_min = 0.1;
  double w_max = 10.0;
};

/// Known (depth, intensity, detuning) operating point of a species.
struct IntensityAnchor {
  Energy depth{0.0};
  Intensity intensity{0.0};
  AngularFrequency detuning{0.0};
};

struct SpeciesPreset {
  std::string name;
  AngularFrequency gamma{0.0};
  AngularFrequency default_detuning{0.0};
  std::vector<IntensityAnchor> anchors;
};

struct RegimeReport {
  bool adiabatic = false;
  double adiabatic_margin = 0.0;  // |Delta| tau
  bool low_emission = false;
  double emission_ratio = 0.0;  // |Delta| / Gamma
  bool depth_ok = false;
  double w = 0.0;  // |V0| tau / hbar
  std::optional<Intensity> intensity_estimate;
  std::vector<std::string> notes;

  [[nodiscard]] bool all_pass() const { return adiabatic && low_emission && depth_ok; }
};

/// Evaluates the adiabaticity (|Delta| tau > 1), spontaneous-emission
/// (|Delta| / Gamma > threshold) and depth (w within the threshold band)
/// gates. Never throws; odd inputs produce notes. When a preset is given the
/// report carries the intensity needed for `depth` at the spec's detuning.
[[nodiscard]] RegimeReport check_regime(const TransitionSpec& spec, const PulseParams& pulse, Energy depth,
                                        const RegimeThresholds& thresholds = {},
                                        const SpeciesPreset* preset = nullptr);

[[nodiscard]] RegimeReport check_regime(AngularFrequency gamma, AngularFrequency detuning, const PulseParams& pulse,
                                        Energy depth, const RegimeThresholds& thresholds = {},
                                        const SpeciesPreset* preset = nullptr);

/// Order-of-magnitude intensity for a target depth assuming V ~ I / Delta:
/// I = I_a (|V| / V_a) (|Delta| / Delta_a) per anchor. With several anchors
/// the smallest estimate is returned (the lowest intensity known to reach
/// the depth). Throws DomainError when the preset has no anchors.
[[nodiscard]] Intensity required_intensity(const SpeciesPreset& preset, Energy target_depth,
                                           AngularFrequency detuning);

/// Smallest and largest per-anchor estimates.
[[nodiscard]] std::pair<Intensity, Intensity> required_intensity_range(const SpeciesPreset& preset,
                                                                       Energy target_depth,
                                                                       AngularFrequency detuning);

/// Current preset file schema version.
inline constexpr int kPresetSchemaVersion = 1;

/// Parses a preset document (JSON text). Throws DomainError on schema errors.
[[nodiscard]] std::vector<SpeciesPreset> parse_presets(const std::string& text);
/// Reads and parses a preset file. Throws std::runtime_error if unreadable.
[[nodiscard]] std::vector<SpeciesPreset> load_presets(const std::filesystem::path& path);
/// Case-insensitive lookup; throws DomainError if absent.
[[nodiscard]] const SpeciesPreset& find_preset(const std::vector<SpeciesPreset>& presets, const std::string& name);

}  // namespace kd
