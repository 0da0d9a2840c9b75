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

#include <numbers>

#include "kd/units.hpp"

namespace kd::constants {

// CODATA 2018 (exact where the SI fixes them).
//   e     = 1.60218e-19 C
//   hbar  = 1.05457e-34 J s
//   c     = 2.99792e8 m/s
//   m_e   = 9.10938e-31 kg
//   eps0  = 8.85419e-12 F/m
//   u     = 1.66054e-27 kg
inline constexpr Charge elementary_charge{1.602176634e-19};
inline constexpr Action hbar{1.054571817e-34};
inline constexpr Velocity speed_of_light{299792458.0};
inline constexpr Mass electron_mass{9.1093837015e-31};
inline constexpr Permittivity vacuum_permittivity{8.8541878128e-12};
inline constexpr Mass atomic_mass_unit{1.66053906660e-27};

inline constexpr double pi = std::numbers::pi;

/// Joules per electronvolt.
inline constexpr double joule_per_ev = 1.602176634e-19;

/// Detunings quoted as "GHz" are taken as angular 1e9 rad/s.
inline constexpr AngularFrequency one_ghz_detuning{1.0e9};

}  // namespace kd::constants
