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

#include <doctest.h>

#include <cmath>
#include <random>

#include "kd/bessel.hpp"

using kd::bessel_j;
using kd::bessel_j_sequence;

namespace {

// Ascending power series in long double; independent of the recurrence.
long double series_oracle(int n, long double x) {
  const long double half = x / 2;
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= half / k;
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -half * half / (static_cast<long double>(k) * (n + k));
    sum += term;
    if (std::fabs(term) < 1e-30L * std::fabs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("values at the origin") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n : {-3, -1, 1, 2, 7}) CHECK(bessel_j(n, 0.0) == 0.0);
}

TEST_CASE("frozen reference values") {
  // mpmath, 30 digits.
  CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-15));
  CHECK(std::fabs(bessel_j(0, 50.0) - 0.055812327669251816) < 1e-12);
  CHECK(std::fabs(bessel_j(5, 50.0) - -0.08140024769656964) < 1e-12);
  CHECK(std::fabs(bessel_j(49, 50.0) - 0.15119514252147223) < 1e-12);
  CHECK(std::fabs(bessel_j(60, 50.0) - 0.0010485195995314181) < 1e-12);
  CHECK(bessel_j(3, 0.3) == doctest::Approx(0.000559343047748846).epsilon(1e-14));
  CHECK(bessel_j(20, 7.5) == doctest::Approx(6.29609082847652e-08).epsilon(1e-12));
  CHECK(bessel_j(100, 30.0) == doctest::Approx(4.5788015281752443e-42).epsilon(1e-10));
  CHECK(bessel_j(2, 1e-8) == doctest::Approx(1.25e-17).epsilon(1e-14));
}

TEST_CASE("series and recurrence agree for small and moderate x") {
  for (double x : {0.05, 0.5, 0.99, 1.0, 1.5, 3.0, 6.0}) {
    for (int n = 0; n <= 12; ++n) {
      CHECK(std::fabs(bessel_j(n, x) - static_cast<double>(series_oracle(n, x))) < 1e-14);
    }
  }
}

TEST_CASE("agreement with std::cyl_bessel_j for |x| <= 50") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(0.0, 50.0);
  std::uniform_int_distribution<int> ns(0, 80);
  double worst = 0.0;
  for (int i = 0; i < 3000; ++i) {
    const double x = xs(rng);
    const int n = ns(rng);
    worst = std::max(worst, std::fabs(bessel_j(n, x) - std::cyl_bessel_j(static_cast<double>(n), x)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("symmetries") {
  for (double x : {0.3, 2.5, 17.0, 44.0}) {
    for (int n = 0; n <= 9; ++n) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(bessel_j(-n, x) == sign * bessel_j(n, x));
      CHECK(bessel_j(n, -x) == sign * bessel_j(n, x));
    }
  }
}

TEST_CASE("normalization sum J_n^2 = 1") {
  const auto j = bessel_j_sequence(40, 2.5);
  double s = j[0] * j[0];
  for (int n = 1; n <= 40; ++n) s += 2.0 * j[n] * j[n];
  CHECK(std::fabs(s - 1.0) < 1e-14);
}

TEST_CASE("sequence matches pointwise evaluation") {
  const auto seq = bessel_j_sequence(30, 12.0);
  for (int n = 0; n <= 30; ++n) CHECK(std::fabs(seq[n] - bessel_j(n, 12.0)) < 1e-15);
  CHECK(bessel_j_sequence(0, 3.0).size() == 1);
}

TEST_CASE("non-finite arguments") {
  CHECK(bessel_j(0, INFINITY) == 0.0);
  CHECK(std::isnan(bessel_j(1, NAN)));
}
