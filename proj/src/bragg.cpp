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

#include "kd/bragg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kd/error.hpp"

namespace kd {
namespace {

BraggResult pendellosung(Energy depth, Time tau) {
  const double theta = 0.25 * dimensionless_phase(depth, tau);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  BraggResult r;
  // The smaller probability is evaluated directly and the other as its
  // complement, so the pair sums to exactly 1.0.
  if (c * c <= s * s) {
    r.p_transmit = c * c;
    r.p_scatter = 1.0 - r.p_transmit;
  } else {
    r.p_scatter = s * s;
    r.p_transmit = 1.0 - r.p_scatter;
  }
  return r;
}

}  // namespace

bool bragg_resonant(const GratingMode& mode, WaveVector k0, double tolerance) {
  const double k_l = mode.wave_vector().si();
  return std::fabs(std::fabs(k0.si()) - k_l) / k_l < tolerance;
}

BraggResult bragg_probabilities(const GratingMode& mode, const PulseParams& pulse, double tolerance) {
  if (!bragg_resonant(mode, pulse.k0(), tolerance)) {
    std::ostringstream msg;
    msg << "Bragg condition violated: |k0|/k_L = " << std::fabs(pulse.k0().si()) / mode.wave_vector().si()
        << " is not within " << tolerance << " of 1; use the Raman-Nath pattern or the propagator";
    throw DomainError(msg.str());
  }
  return pendellosung(mode.depth(), pulse.tau());
}

BraggResult two_mode_bragg(const GratingMode& dipole, const GratingMode& quad, const PulseParams& pulse,
                           double tolerance) {
  if (dipole.kind() != TransitionKind::Dipole || quad.kind() != TransitionKind::Quadrupole) {
    throw DomainError("two_mode_bragg: expected a dipole mode and a quadrupole mode");
  }
  const double k_d = dipole.wave_vector().si();
  const double k_q = quad.wave_vector().si();
  if (std::fabs(k_d - k_q) / std::max(k_d, k_q) < tolerance) {
    throw DomainError("two_mode_bragg: k_D and k_Q coincide within the Bragg tolerance");
  }
  const bool on_d = bragg_resonant(dipole, pulse.k0(), tolerance);
  const bool on_q = bragg_resonant(quad, pulse.k0(), tolerance);
  if (on_d && on_q) throw DomainError("two_mode_bragg: k0 satisfies the Bragg condition for both modes");

  if (on_d) {
    auto r = pendellosung(dipole.depth(), pulse.tau());
    r.resonant_mode = 0;
    return r;
  }
  if (on_q) {
    auto r = pendellosung(quad.depth(), pulse.tau());
    r.resonant_mode = 1;
    return r;
  }
  BraggResult r;
  r.detuned = true;
  return r;
}

}  // namespace kd
