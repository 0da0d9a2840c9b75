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

#include <cmath>
#include <compare>
#include <type_traits>

namespace kd {

// Compile-time SI dimension: exponents of kg, m, s, A.
template <int Kg, int M, int S, int A>
struct Dim {
  static constexpr int kg = Kg;
  static constexpr int m = M;
  static constexpr int s = S;
  static constexpr int amp = A;
};

template <class D1, class D2>
using DimProduct = Dim<D1::kg + D2::kg, D1::m + D2::m, D1::s + D2::s, D1::amp + D2::amp>;

template <class D1, class D2>
using DimQuotient = Dim<D1::kg - D2::kg, D1::m - D2::m, D1::s - D2::s, D1::amp - D2::amp>;

/// A double tagged with its SI dimension. Arithmetic between quantities
/// tracks dimensions at compile time; adding mismatched dimensions does not
/// compile.
template <class D>
class Quantity {
 public:
  using dimension = D;

  constexpr Quantity() = default;
  constexpr explicit Quantity(double si_value) : value_(si_value) {}

  /// Raw value in SI base units.
  [[nodiscard]] constexpr double si() const { return value_; }

  constexpr Quantity& operator+=(Quantity o) {
    value_ += o.value_;
    return *this;
  }
  constexpr Quantity& operator-=(Quantity o) {
    value_ -= o.value_;
    return *this;
  }
  constexpr Quantity& operator*=(double f) {
    value_ *= f;
    return *this;
  }
  constexpr Quantity& operator/=(double f) {
    value_ /= f;
    return *this;
  }

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
  friend constexpr Quantity operator-(Quantity a) { return Quantity(-a.value_); }
  friend constexpr Quantity operator*(Quantity a, double f) { return Quantity(a.value_ * f); }
  friend constexpr Quantity operator*(double f, Quantity a) { return Quantity(a.value_ * f); }
  friend constexpr Quantity operator/(Quantity a, double f) { return Quantity(a.value_ / f); }

  friend constexpr bool operator==(Quantity, Quantity) = default;
  friend constexpr auto operator<=>(Quantity a, Quantity b) { return a.value_ <=> b.value_; }

 private:
  double value_ = 0.0;
};

using Dimensionless = Dim<0, 0, 0, 0>;

template <class D1, class D2>
constexpr auto operator*(Quantity<D1> a, Quantity<D2> b) {
  using R = DimProduct<D1, D2>;
  if constexpr (std::is_same_v<R, Dimensionless>) {
    return a.si() * b.si();
  } else {
    return Quantity<R>(a.si() * b.si());
  }
}

template <class D1, class D2>
constexpr auto operator/(Quantity<D1> a, Quantity<D2> b) {
  using R = DimQuotient<D1, D2>;
  if constexpr (std::is_same_v<R, Dimensionless>) {
    return a.si() / b.si();
  } else {
    return Quantity<R>(a.si() / b.si());
  }
}

template <class D>
constexpr auto operator/(double f, Quantity<D> b) {
  return Quantity<DimQuotient<Dimensionless, D>>(f / b.si());
}

template <class D>
Quantity<D> abs(Quantity<D> q) {
  return Quantity<D>(std::fabs(q.si()));
}

// Dimensions used in this project.
using Mass = Quantity<Dim<1, 0, 0, 0>>;
using Length = Quantity<Dim<0, 1, 0, 0>>;
using Time = Quantity<Dim<0, 0, 1, 0>>;
using Charge = Quantity<Dim<0, 0, 1, 1>>;
using WaveVector = Quantity<Dim<0, -1, 0, 0>>;       // rad/m
using AngularFrequency = Quantity<Dim<0, 0, -1, 0>>;  // rad/s, also decay rates
using Velocity = Quantity<Dim<0, 1, -1, 0>>;
using Energy = Quantity<Dim<1, 2, -2, 0>>;
using Action = Quantity<Dim<1, 2, -1, 0>>;    // J s; also <e|x p_z|g>
using Momentum = Quantity<Dim<1, 1, -1, 0>>;  // <e|p_z|g>
using VectorPotential = Quantity<Dim<1, 1, -2, -1>>;  // T m
using Intensity = Quantity<Dim<1, 0, -3, 0>>;         // W/m^2
using Permittivity = Quantity<Dim<-1, -3, 4, 2>>;

}  // namespace kd
