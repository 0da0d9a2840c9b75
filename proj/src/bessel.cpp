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

#include "kd/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "kd/error.hpp"

namespace kd {
namespace {

constexpr double kSeriesCutoff = 1.0;
constexpr double kRescaleAbove = 1e250;

// Ascending series; terms shrink by at least 4x per step for |x| < 1.
std::vector<double> series_sequence(int n_max, double x) {
  std::vector<double> out(n_max + 1);
  const double half = 0.5 * x;
  const double q = -half * half;
  double lead = 1.0;  // (x/2)^n / n!
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) lead *= half / n;
    double term = lead;
    double sum = term;
    for (int k = 1; k < 200 && term != 0.0; ++k) {
      term *= q / (static_cast<double>(k) * (n + k));
      const double next = sum + term;
      if (next == sum) break;
      sum = next;
    }
    out[n] = sum;
  }
  return out;
}

// Miller's backward recurrence. The unnormalized sequence f_k is scaled so
// that J_0^2 + 2 sum J_k^2 = 1; the sign comes from J_0 + 2 sum J_2k = 1.
std::vector<double> miller_sequence(int n_max, double x) {
  const double top = std::max(static_cast<double>(n_max), x);
  int start = static_cast<int>(top + 20.0 + 12.0 * std::cbrt(x));
  start += start % 2;

  std::vector<double> f(start + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-30;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = (2.0 * k / x) * f[k] - f[k + 1];
    if (std::fabs(f[k - 1]) > kRescaleAbove) {
      for (int j = k - 1; j <= start; ++j) f[j] /= kRescaleAbove;
    }
  }

  double sum_sq = f[0] * f[0];
  double even_sum = f[0];
  for (int k = 1; k <= start; ++k) {
    sum_sq += 2.0 * f[k] * f[k];
    if (k % 2 == 0) even_sum += 2.0 * f[k];
  }
  const double scale = std::copysign(1.0 / std::sqrt(sum_sq), even_sum);

  std::vector<double> out(n_max + 1);
  for (int k = 0; k <= n_max; ++k) out[k] = f[k] * scale;
  return out;
}

}  // namespace

std::vector<double> bessel_j_sequence(int n_max, double x) {
  if (n_max < 0) throw DomainError("bessel_j_sequence: n_max must be non-negative");
  if (!std::isfinite(x)) throw DomainError("bessel_j_sequence: argument must be finite");

  const double ax = std::fabs(x);
  std::vector<double> out;
  if (ax == 0.0) {
    out.assign(n_max + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  out = ax < kSeriesCutoff ? series_sequence(n_max, ax) : miller_sequence(n_max, ax);
  if (x < 0.0) {
    for (int n = 1; n <= n_max; n += 2) out[n] = -out[n];
  }
  return out;
}

double bessel_j(int n, double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? x : 0.0;
  const int an = std::abs(n);
  const double value = bessel_j_sequence(an, x)[an];
  // J_{-n} = (-1)^n J_n
  return (n < 0 && an % 2 == 1) ? -value : value;
}

}  // namespace kd
