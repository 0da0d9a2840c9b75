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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kd/core.hpp"

namespace kd {

/// One diffraction peak. `n` counts photon pairs exchanged with the dipole
/// (or only) mode, `m` with the quadrupole mode.
struct DiffractionOrder {
  int n = 0;
  int m = 0;
  WaveVector momentum_transfer{0.0};  // 2n k_D + 2m k_Q
  double probability = 0.0;
  /// Number of (n, m) labels coalesced into this peak.
  int multiplicity = 1;

  friend bool operator==(const DiffractionOrder&, const DiffractionOrder&) = default;
};

struct DiffractionPattern {
  std::vector<DiffractionOrder> orders;
  int truncation = 0;
  /// Probability not carried by the retained orders, 1 - sum(P), clamped at 0.
  double tail_bound = 0.0;
  bool merged = false;

  /// Probability of the peak labelled (n, m), 0 if not retained.
  [[nodiscard]] double probability(int n, int m = 0) const;
  [[nodiscard]] double total() const;

  friend bool operator==(const DiffractionPattern&, const DiffractionPattern&) = default;
};

/// Default truncation ceil(w) + 15 for a phase w = V0 tau / hbar.
[[nodiscard]] int default_truncation(double w);

/// Relative momentum tolerance under which two-mode peaks coalesce.
inline constexpr double kDefaultMergeTolerance = 1e-9;

/// Thin-grating pattern of a single mode: P(n) = J_n(w/2)^2, w = V0 tau / hbar,
/// for n in [-N, N]. Identical for cos^2 and sin^2 profiles.
[[nodiscard]] DiffractionPattern single_mode_pattern(const GratingMode& mode, const PulseParams& pulse,
                                                     std::optional<int> truncation = std::nullopt);

/// Thin-grating pattern of a dipole + quadrupole grating:
/// P(n, m) = J_n(w_D/2)^2 J_m(w_Q/2)^2 on momentum 2n k_D + 2m k_Q.
/// Peaks whose momenta coincide within `merge_tolerance` (relative to
/// max(k_D, k_Q)) are summed in probability and the pattern is marked merged.
[[nodiscard]] DiffractionPattern two_mode_pattern(const GratingMode& dipole, const GratingMode& quad,
                                                  const PulseParams& pulse,
                                                  std::optional<int> truncation = std::nullopt,
                                                  double merge_tolerance = kDefaultMergeTolerance);

// Amplitude access, used to cross-check phases against the propagator.
//
// For a mode with signed phase a = V0 tau / hbar, exp(-i a cos^2(kX)) expands
// to e^{-ia/2} sum_n i^n J_n(-a/2) e^{2inkX}; for sin^2 the Bessel argument is
// +a/2. Attractive gratings (a < 0) therefore give i^n J_n(w/2) for cos^2 and
// i^m J_m(-w/2) for sin^2, global phase included.
struct OrderAmplitude {
  int n = 0;
  int m = 0;
  WaveVector momentum_transfer{0.0};
  std::complex<double> amplitude;
};

[[nodiscard]] std::vector<OrderAmplitude> pattern_amplitudes(std::span<const GratingMode> modes,
                                                             const PulseParams& pulse, int truncation);

/// Coherent sum of amplitudes landing on the same momentum (within the
/// relative tolerance). Returns (momentum_transfer, probability), sorted by
/// momentum.
struct LadderPopulation {
  WaveVector momentum_transfer{0.0};
  double probability = 0.0;
  std::complex<double> amplitude;
};
[[nodiscard]] std::vector<LadderPopulation> coherent_populations(std::span<const OrderAmplitude> amplitudes,
                                                                 double merge_tolerance = kDefaultMergeTolerance);

/// A requested sweep curve: order (n, m); m != 0 only exists for the
/// two-mode grating.
struct OrderLabel {
  int n = 0;
  int m = 0;
  friend bool operator==(const OrderLabel&, const OrderLabel&) = default;
};

/// Parses "00,10,01" (one digit per index) or "n:m" tokens, e.g. "-1:0,2:1".
[[nodiscard]] std::vector<OrderLabel> parse_order_labels(const std::string& text);

struct SweepConfig {
  double w_min = 0.0;
  double w_max = 12.0;
  int samples = 500;
  /// V_Q0 / V_D0.
  double ratio = 0.8;
  std::vector<OrderLabel> orders;
};

struct SweepRow {
  double w = 0.0;
  std::string label;
  double probability = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Curve label, "sm_n<n>" for the single-mode grating, "tm_n<n>_m<m>" for two modes.
[[nodiscard]] std::string single_mode_label(int n);
[[nodiscard]] std::string two_mode_label(int n, int m);

/// Probability curves versus w = V_D0 tau / hbar, with w_Q = ratio * w. Per
/// sample, single-mode rows (orders with m == 0) come first, then two-mode
/// rows, each in request order.
[[nodiscard]] std::vector<SweepRow> pattern_sweep(const SweepConfig& config);

}  // namespace kd
