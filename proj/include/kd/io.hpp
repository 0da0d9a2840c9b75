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

#include <json.hpp>

#include <string>
#include <vector>

#include "kd/bragg.hpp"
#include "kd/feasibility.hpp"
#include "kd/propagator.hpp"
#include "kd/raman_nath.hpp"

namespace kd::io {

// Output schemas. CSV numbers use 17 significant digits; JSON documents carry
// a "schema" name and "version" so consumers can detect changes.
//
//   pattern     n,m,momentum_transfer_per_kL,probability
//   sweep       w,label,probability
//   bragg       p_transmit,p_scatter,resonant_mode,detuned
//   feasibility check,value,threshold,pass
//   propagate   order,momentum_transfer_per_kL,population,raman_nath
//   density     x_per_period,density

inline constexpr int kSchemaVersion = 1;

enum class Format { Csv, Json };

[[nodiscard]] std::string format_double(double v);

// pattern
[[nodiscard]] std::string pattern_csv(const DiffractionPattern& pattern, WaveVector k_ref);
[[nodiscard]] nlohmann::json pattern_to_json(const DiffractionPattern& pattern, WaveVector k_ref);
[[nodiscard]] DiffractionPattern pattern_from_json(const nlohmann::json& doc);

// sweep
[[nodiscard]] std::string sweep_csv(const std::vector<SweepRow>& rows);
[[nodiscard]] nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);
[[nodiscard]] std::vector<SweepRow> sweep_from_json(const nlohmann::json& doc);

// bragg
[[nodiscard]] std::string bragg_csv(const BraggResult& result);
[[nodiscard]] nlohmann::json bragg_to_json(const BraggResult& result);

// feasibility
[[nodiscard]] std::string regime_csv(const RegimeReport& report, const RegimeThresholds& thresholds);
[[nodiscard]] nlohmann::json regime_to_json(const RegimeReport& report, const RegimeThresholds& thresholds);

// propagate
struct PropagationRow {
  std::string order;  // "n:m"
  double momentum_transfer_per_kl = 0.0;
  double population = 0.0;
  /// Closed-form thin-grating prediction for the same momentum.
  double raman_nath = 0.0;
};
[[nodiscard]] std::string propagation_csv(const std::vector<PropagationRow>& rows, double off_ladder);
[[nodiscard]] nlohmann::json propagation_to_json(const std::vector<PropagationRow>& rows, double off_ladder,
                                                 double norm);

/// |psi(X)|^2 against X in units of the potential period.
[[nodiscard]] std::string density_csv(const WavefunctionGrid& grid, Length period);

}  // namespace kd::io
