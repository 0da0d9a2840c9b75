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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kd/core.hpp"

namespace kd {

/// Periodic 1-D wavefunction on G equally spaced points over a box of length L.
/// Normalized so that sum |psi|^2 dx = 1.
class WavefunctionGrid {
 public:
  /// Throws DomainError if G is not a power of two, L or M are not
  /// positive, or the state is not normalized to 1e-12.
  WavefunctionGrid(std::vector<std::complex<double>> amplitudes, Length box, Mass mass);

  /// exp(i k0 X) / sqrt(L). k0 must lie on the reciprocal lattice 2 pi j / L.
  static WavefunctionGrid plane_wave(std::size_t points, Length box, Mass mass, WaveVector k0);

  [[nodiscard]] std::size_t size() const { return psi_.size(); }
  [[nodiscard]] Length box_length() const { return box_; }
  [[nodiscard]] Length dx() const { return box_ / static_cast<double>(psi_.size()); }
  [[nodiscard]] Mass mass() const { return mass_; }
  [[nodiscard]] Length position(std::size_t i) const { return dx() * static_cast<double>(i); }
  /// Reciprocal lattice spacing 2 pi / L.
  [[nodiscard]] WaveVector lattice_spacing() const;
  [[nodiscard]] std::span<const std::complex<double>> amplitudes() const { return psi_; }
  [[nodiscard]] double norm() const;

 private:
  struct Unchecked {};
  WavefunctionGrid(std::vector<std::complex<double>> amplitudes, Length box, Mass mass, Unchecked);
  friend WavefunctionGrid evolve(const WavefunctionGrid&, const PotentialField&, const PulseParams&, int, bool);

  std::vector<std::complex<double>> psi_;
  Length box_;
  Mass mass_;
};

/// Box and resolution for propagator runs: `periods` potential periods pi/k_L.
struct GridSpec {
  std::size_t points = 4096;
  int periods = 32;
};

/// Step count keeping |V0| dt / hbar <= 0.01 (summed over modes).
[[nodiscard]] int default_steps(const PotentialField& potential, const PulseParams& pulse);

/// Second-order split-operator evolution of the grid for the pulse duration.
/// With kinetic energy: half kinetic, full potential, half kinetic per step.
/// Without it: pure phase multiplication by exp(-i V(X) dt / hbar) per step.
/// Throws DomainError if the box is not an integer number of periods of every
/// mode or steps < 1.
[[nodiscard]] WavefunctionGrid evolve(const WavefunctionGrid& grid, const PotentialField& potential,
                                      const PulseParams& pulse, int steps, bool include_kinetic);

struct MomentumPopulation {
  WaveVector k{0.0};
  double population = 0.0;
  /// Plane-wave coefficient of exp(i k X) / sqrt(L).
  std::complex<double> amplitude;
};

struct MomentumSpectrum {
  std::vector<MomentumPopulation> ladder;
  /// Population on every lattice momentum not in the ladder.
  double off_ladder = 0.0;
  double total = 0.0;

  /// Population at k (matching within half a lattice spacing), 0 if absent.
  [[nodiscard]] double population_at(WaveVector k) const;
  [[nodiscard]] const MomentumPopulation* find(WaveVector k) const;
};

/// Populations at the requested ladder momenta. Duplicate ladder points are
/// reported once. Throws DomainError for momenta off the reciprocal lattice
/// or beyond the grid's Nyquist range.
[[nodiscard]] MomentumSpectrum momentum_spectrum(const WavefunctionGrid& grid, std::span<const WaveVector> ladder);

/// k0 + 2n k_1 (+ 2m k_2) for |n|, |m| <= truncation, deduplicated, sorted.
[[nodiscard]] std::vector<WaveVector> ladder_momenta(WaveVector k0, std::span<const GratingMode> modes,
                                                     int truncation);

/// hbar (2 k_L)^2 / (2 M).
[[nodiscard]] AngularFrequency recoil_frequency(WaveVector k_l, Mass mass);

struct OrderDeviation {
  int n = 0;
  double p_kinetic = 0.0;
  double p_raman_nath = 0.0;
  double deviation = 0.0;
};

struct RamanNathReport {
  std::vector<OrderDeviation> orders;
  double max_deviation = 0.0;
  /// omega_rec * tau.
  double recoil_phase = 0.0;
  int steps = 0;
};

/// Runs the propagator with and without the kinetic term and compares the
/// order populations. Default steps: max(default_steps, 100 omega_rec tau).
[[nodiscard]] RamanNathReport raman_nath_error(const GratingMode& mode, const PulseParams& pulse, const GridSpec& grid,
                                               Mass atom_mass, std::optional<int> steps = std::nullopt);

}  // namespace kd
