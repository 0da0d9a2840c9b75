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

#include <vector>

namespace kd {

/// Bessel function of the first kind J_n(x) for any integer order and real
/// argument. Absolute error below 1e-12 for |x| <= 50.
[[nodiscard]] double bessel_j(int n, double x);

/// J_0(x) ... J_{n_max}(x) from a single recurrence pass.
[[nodiscard]] std::vector<double> bessel_j_sequence(int n_max, double x);

}  // namespace kd
