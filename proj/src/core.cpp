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

#include "kd/core.hpp"

#include <cmath>
#include <string>

#include "kd/error.hpp"

namespace kd {

using constants::elementary_charge;
using constants::electron_mass;
using constants::hbar;

PotentialShape natural_shape(TransitionKind kind) {
  return kind == TransitionKind::Dipole ? PotentialShape::CosSq : PotentialShape::SinSq;
}

GratingMode::GratingMode(WaveVector k, Energy depth, TransitionKind kind, PotentialSign sign)
    : GratingMode(k, depth, natural_shape(kind), kind, sign) {}

GratingMode::GratingMode(WaveVector k, Energy depth, PotentialShape shape, TransitionKind kind,
                         PotentialSign sign)
    : k_(k), depth_(depth), shape_(shape), kind_(kind), sign_(sign) {
  if (!(k.si() > 0.0) || !std::isfinite(k.si())) {
    throw DomainError("grating wave vector must be positive and finite");
  }
  if (!(depth.si() >= 0.0) || !std::isfinite(depth.si())) {
    throw DomainError("grating depth must be non-negative and finite; pass the sign separately");
  }
}

GratingMode GratingMode::from_signed_depth(WaveVector k, Energy signed_depth, TransitionKind kind) {
  const auto sign = signed_depth.si() < 0.0 ? PotentialSign::Attractive : PotentialSign::Repulsive;
  return GratingMode(k, abs(signed_depth), kind, sign);
}

GratingMode GratingMode::with_shape(WaveVector k, Energy depth, PotentialShape shape,
                                    TransitionKind kind, PotentialSign sign) {
  return GratingMode(k, depth, shape, kind, sign);
}

Energy GratingMode::value_at(Length x) const {
  const double phase = k_ * x;
  const double s = shape_ == PotentialShape::CosSq ? std::cos(phase) : std::sin(phase);
  return signed_depth() * (s * s);
}

Length GratingMode::period() const { return constants::pi / k_; }

TransitionSpec::TransitionSpec(TransitionKind kind, AngularFrequency gamma,
                               AngularFrequency detuning, std::variant<Momentum, Action> element,
                               VectorPotential a0)
    : kind_(kind), gamma_(gamma), detuning_(detuning), element_(element), field_amplitude_(a0) {
  if (!(gamma.si() > 0.0)) throw DomainError("decay rate gamma must be positive");
  if (detuning.si() == 0.0) throw DomainError("detuning must be nonzero");
}

TransitionSpec TransitionSpec::dipole(AngularFrequency gamma, AngularFrequency detuning,
                                      Momentum matrix_element, VectorPotential field_amplitude) {
  if (!(matrix_element.si() >= 0.0)) throw DomainError("matrix element must be non-negative");
  return TransitionSpec(TransitionKind::Dipole, gamma, detuning, matrix_element, field_amplitude);
}

TransitionSpec TransitionSpec::quadrupole(AngularFrequency gamma, AngularFrequency detuning,
                                          Action matrix_element, VectorPotential field_amplitude) {
  if (!(matrix_element.si() >= 0.0)) throw DomainError("matrix element must be non-negative");
  return TransitionSpec(TransitionKind::Quadrupole, gamma, detuning, matrix_element,
                        field_amplitude);
}

Momentum TransitionSpec::dipole_matrix_element() const {
  if (kind_ != TransitionKind::Dipole) {
    throw DomainError("expected a dipole transition, got a quadrupole one");
  }
  return std::get<Momentum>(element_);
}

Action TransitionSpec::quadrupole_matrix_element() const {
  if (kind_ != TransitionKind::Quadrupole) {
    throw DomainError("expected a quadrupole transition, got a dipole one");
  }
  return std::get<Action>(element_);
}

PulseParams::PulseParams(Time tau, WaveVector k0) : tau_(tau), k0_(k0) {
  if (!(tau.si() > 0.0) || !std::isfinite(tau.si())) {
    throw DomainError("interaction time tau must be positive and finite");
  }
}

double dimensionless_phase(Energy depth, Time tau) { return std::fabs(depth.si()) * tau.si() / hbar.si(); }

Energy depth_for_phase(double w, Time tau) {
  if (!(tau.si() > 0.0)) throw DomainError("interaction time tau must be positive");
  return Energy{w * hbar.si() / tau.si()};
}

Energy PotentialField::operator()(Length x) const {
  Energy v{0.0};
  for (const auto& mode : modes_) v += mode.value_at(x);
  return v;
}

Energy PotentialField::total_depth() const {
  Energy v{0.0};
  for (const auto& mode : modes_) v += mode.depth();
  return v;
}

PotentialField build_potential(std::span<const GratingMode> modes) {
  if (modes.empty() || modes.size() > 2) {
    throw DomainError("a grating has one or two modes, got " + std::to_string(modes.size()));
  }
  return PotentialField(std::vector<GratingMode>(modes.begin(), modes.end()));
}

AngularFrequency rabi_dipole(const TransitionSpec& spec) {
  const AngularFrequency omega =
      elementary_charge * spec.field_amplitude() * spec.dipole_matrix_element() / (hbar * electron_mass);
  return abs(omega);
}

AngularFrequency rabi_quadrupole(const TransitionSpec& spec, WaveVector k_l) {
  if (!(k_l.si() > 0.0)) throw DomainError("laser wave vector must be positive");
  const AngularFrequency omega = elementary_charge * spec.field_amplitude() * k_l *
                                 spec.quadrupole_matrix_element() / (hbar * electron_mass);
  return abs(omega);
}

Energy depth_from_rabi(AngularFrequency omega, AngularFrequency detuning) {
  if (detuning.si() == 0.0) throw DomainError("optical potential is undefined at zero detuning");
  return hbar * (omega * omega) / (4.0 * detuning);
}

AngularFrequency rabi_for_depth(Energy depth, AngularFrequency detuning) {
  if (detuning.si() == 0.0) throw DomainError("optical potential is undefined at zero detuning");
  const double omega_sq = 4.0 * std::fabs(depth.si() * detuning.si()) / hbar.si();
  return AngularFrequency{std::sqrt(omega_sq)};
}

Intensity intensity_from_field(VectorPotential a0, AngularFrequency omega_l) {
  return 0.5 * constants::vacuum_permittivity * constants::speed_of_light * (omega_l * omega_l) *
         (a0 * a0);
}

VectorPotential field_from_intensity(Intensity intensity, AngularFrequency omega_l) {
  if (!(intensity.si() >= 0.0)) throw DomainError("intensity must be non-negative");
  if (omega_l.si() == 0.0) throw DomainError("laser frequency must be nonzero");
  const auto denom = 0.5 * constants::vacuum_permittivity * constants::speed_of_light * (omega_l * omega_l);
  return VectorPotential{std::sqrt(intensity.si() / denom.si())};
}

}  // namespace kd
