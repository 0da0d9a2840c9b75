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

#include <optional>

#include "kd/core.hpp"

namespace kd {

/// Default Bragg acceptance |(|k0| - k_L)| / k_L.
inline constexpr double kDefaultBraggTolerance = 1e-3;

struct BraggResult {
  double p_transmit = 1.0;
  double p_scatter = 0.0;
  /// Two-mode case: 0 for the dipole mode, 1 for the quadrupole mode.
  std::optional<int> resonant_mode;
  /// Set when k0 satisfies no mode's Bragg condition.
  bool detuned = false;
};

/// True when |k0| lies within the relative tolerance of the mode's k_L.
[[nodiscard]] bool bragg_resonant(const GratingMode& mode, WaveVector k0,
                                  double tolerance = kDefaultBraggTolerance);

/// First-order Bragg (two-state Pendellosung) probabilities
/// P_tra = cos^2(V0 tau / 4 hbar), P_sca = sin^2(V0 tau / 4 hbar).
/// Throws DomainError when k0 violates the Bragg condition.
[[nodiscard]] BraggResult bragg_probabilities(const GratingMode& mode, const PulseParams& pulse,
                                              double tolerance = kDefaultBraggTolerance);

/// Two-mode grating: only the mode whose k matches |k0| scatters. Off-resonant
/// input passes through with (1, 0) and `detuned` set. Throws DomainError if
/// k_D and k_Q are both within tolerance of |k0|, or of each other.
[[nodiscard]] BraggResult two_mode_bragg(const GratingMode& dipole, const GratingMode& quad,
                                         const PulseParams& pulse,
                                         double tolerance = kDefaultBraggTolerance);

}  // namespace kd
