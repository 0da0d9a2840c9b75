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
#include <span>
#include <variant>
#include <vector>

#include "kd/constants.hpp"
#include "kd/units.hpp"

namespace kd {

enum class TransitionKind { Dipole, Quadrupole };

/// Spatial profile of a standing-wave potential: cos^2(kX) or sin^2(kX).
enum class PotentialShape { CosSq, SinSq };

/// Sign of the light shift. Repulsive gratings have V(X) = +V0 * shape(kX)
/// (blue detuning), attractive ones -V0 * shape(kX) (red detuning).
enum class PotentialSign { Repulsive, Attractive };

[[nodiscard]] PotentialShape natural_shape(TransitionKind kind);

/// One standing-wave mode of the light grating.
///
/// Dipole modes produce a cos^2 potential and quadrupole modes a sin^2 one;
/// the regular constructor enforces this pairing. `with_shape` bypasses it
/// for tests that need, e.g., a dipole-strength sin^2 profile.
class GratingMode {
 public:
  GratingMode(WaveVector k, Energy depth, TransitionKind kind,
              PotentialSign sign = PotentialSign::Repulsive);

  /// Builds a mode from a signed depth as returned by depth_from_rabi.
  static GratingMode from_signed_depth(WaveVector k, Energy signed_depth, TransitionKind kind);

  static GratingMode with_shape(WaveVector k, Energy depth, PotentialShape shape,
                                TransitionKind kind,
                                PotentialSign sign = PotentialSign::Repulsive);

  [[nodiscard]] WaveVector wave_vector() const { return k_; }
  /// Magnitude V0 >= 0.
  [[nodiscard]] Energy depth() const { return depth_; }
  [[nodiscard]] double depth_ev() const { return depth_.si() / constants::joule_per_ev; }
  /// Depth carrying the light-shift sign.
  [[nodiscard]] Energy signed_depth() const {
    return sign_ == PotentialSign::Attractive ? -depth_ : depth_;
  }
  [[nodiscard]] PotentialShape shape() const { return shape_; }
  [[nodiscard]] TransitionKind kind() const { return kind_; }
  [[nodiscard]] PotentialSign sign() const { return sign_; }

  /// Potential energy of this mode at X.
  [[nodiscard]] Energy value_at(Length x) const;
  /// Spatial period pi/k.
  [[nodiscard]] Length period() const;

 private:
  GratingMode(WaveVector k, Energy depth, PotentialShape shape, TransitionKind kind,
              PotentialSign sign);

  WaveVector k_;
  Energy depth_;
  PotentialShape shape_;
  TransitionKind kind_;
  PotentialSign sign_;
};

/// Atomic transition data. The matrix element is |<e|p_z|g>| (momentum) for
/// dipole transitions and |<e|x p_z|g>| (action) for quadrupole ones.
class TransitionSpec {
 public:
  static TransitionSpec dipole(AngularFrequency gamma, AngularFrequency detuning,
                               Momentum matrix_element, VectorPotential field_amplitude);
  static TransitionSpec quadrupole(AngularFrequency gamma, AngularFrequency detuning,
                                   Action matrix_element, VectorPotential field_amplitude);

  [[nodiscard]] TransitionKind kind() const { return kind_; }
  [[nodiscard]] AngularFrequency gamma() const { return gamma_; }
  [[nodiscard]] AngularFrequency detuning() const { return detuning_; }
  [[nodiscard]] VectorPotential field_amplitude() const { return field_amplitude_; }

  /// Throws DomainError unless kind() == Dipole.
  [[nodiscard]] Momentum dipole_matrix_element() const;
  /// Throws DomainError unless kind() == Quadrupole.
  [[nodiscard]] Action quadrupole_matrix_element() const;

 private:
  TransitionSpec(TransitionKind kind, AngularFrequency gamma, AngularFrequency detuning,
                 std::variant<Momentum, Action> element, VectorPotential a0);

  TransitionKind kind_;
  AngularFrequency gamma_;
  AngularFrequency detuning_;
  std::variant<Momentum, Action> element_;
  VectorPotential field_amplitude_;
};

/// Square interaction pulse and incident atomic wave vector.
class PulseParams {
 public:
  PulseParams(Time tau, WaveVector k0 = WaveVector{0.0});

  [[nodiscard]] Time tau() const { return tau_; }
  [[nodiscard]] WaveVector k0() const { return k0_; }

 private:
  Time tau_;
  WaveVector k0_;
};

/// Dimensionless phase w = |V0| tau / hbar.
[[nodiscard]] double dimensionless_phase(Energy depth, Time tau);
/// Inverse of dimensionless_phase: V0 = w hbar / tau.
[[nodiscard]] Energy depth_for_phase(double w, Time tau);

/// Sum of one or two grating modes, V(X) = sum_i V0_i shape_i(k_i X).
class PotentialField {
 public:
  [[nodiscard]] std::span<const GratingMode> modes() const { return modes_; }
  [[nodiscard]] Energy operator()(Length x) const;
  /// Sum of the mode depths (magnitudes).
  [[nodiscard]] Energy total_depth() const;

 private:
  friend PotentialField build_potential(std::span<const GratingMode> modes);
  explicit PotentialField(std::vector<GratingMode> modes) : modes_(std::move(modes)) {}

  std::vector<GratingMode> modes_;
};

/// Throws DomainError for an empty list or more than two modes.
[[nodiscard]] PotentialField build_potential(std::span<const GratingMode> modes);

// Rabi frequencies in SI form: Omega_D = e A0 <e|p_z|g> / (hbar m_e) and
// Omega_Q = e A0 k_L <e|x p_z|g> / (hbar m_e).
[[nodiscard]] AngularFrequency rabi_dipole(const TransitionSpec& spec);
[[nodiscard]] AngularFrequency rabi_quadrupole(const TransitionSpec& spec, WaveVector k_l);

/// Optical potential depth hbar Omega^2 / (4 Delta). The sign follows the
/// detuning. Throws DomainError for zero detuning.
[[nodiscard]] Energy depth_from_rabi(AngularFrequency omega, AngularFrequency detuning);

/// Rabi frequency needed for a given |depth| at a detuning (inverse of
/// depth_from_rabi on magnitudes).
[[nodiscard]] AngularFrequency rabi_for_depth(Energy depth, AngularFrequency detuning);

// Intensity of one traveling-wave component, I = eps0 c omega_L^2 A0^2 / 2.
[[nodiscard]] Intensity intensity_from_field(VectorPotential a0, AngularFrequency omega_l);
[[nodiscard]] VectorPotential field_from_intensity(Intensity intensity, AngularFrequency omega_l);

[[nodiscard]] inline Energy energy_from_ev(double ev) { return Energy{ev * constants::joule_per_ev}; }
[[nodiscard]] inline double energy_to_ev(Energy e) { return e.si() / constants::joule_per_ev; }

}  // namespace kd
