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

#include "kd/raman_nath.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "kd/bessel.hpp"
#include "kd/error.hpp"

namespace kd {
namespace {

// i^n for any integer n.
std::complex<double> i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Squared Bessel values J_0^2 ... J_N^2 at w/2.
std::vector<double> order_probabilities(double w, int truncation) {
  auto j = bessel_j_sequence(truncation, 0.5 * w);
  for (double& v : j) v *= v;
  return j;
}

void check_truncation(int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
}

double finalize_tail(const std::vector<DiffractionOrder>& orders) {
  // Sum smallest first.
  std::vector<double> p;
  p.reserve(orders.size());
  for (const auto& o : orders) p.push_back(o.probability);
  std::sort(p.begin(), p.end());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  return std::max(0.0, 1.0 - total);
}

// Orders labels for choosing the representative of a merged group.
bool label_less(int n1, int m1, int n2, int m2) {
  const int r1 = std::abs(n1) + std::abs(m1);
  const int r2 = std::abs(n2) + std::abs(m2);
  if (r1 != r2) return r1 < r2;
  if (n1 != n2) return n1 < n2;
  return m1 < m2;
}

// Groups indices of `momenta` whose values lie within tol of the group's
// first member after sorting by momentum.
std::vector<std::vector<std::size_t>> group_by_momentum(const std::vector<double>& momenta, double tol) {
  std::vector<std::size_t> idx(momenta.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return momenta[a] < momenta[b]; });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i : idx) {
    if (!groups.empty() && std::fabs(momenta[i] - momenta[groups.back().front()]) <= tol) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  return groups;
}

// e^{-ia/2} i^n J_n(arg), with J_n(arg) rebuilt from the |arg| sequence.
std::complex<double> mode_coefficient(double bessel_arg_sign, const std::vector<double>& jseq, double a, int n) {
  const int an = std::abs(n);
  double jn = jseq[an];
  if (n < 0 && an % 2 == 1) jn = -jn;
  // J_n(-x) = (-1)^n J_n(x)
  if (bessel_arg_sign < 0.0 && an % 2 == 1) jn = -jn;
  return std::polar(1.0, -0.5 * a) * i_pow(n) * jn;
}

}  // namespace

double DiffractionPattern::probability(int n, int m) const {
  for (const auto& o : orders) {
    if (o.n == n && o.m == m) return o.probability;
  }
  return 0.0;
}

double DiffractionPattern::total() const {
  double s = 0.0;
  for (const auto& o : orders) s += o.probability;
  return s;
}

int default_truncation(double w) { return static_cast<int>(std::ceil(std::fabs(w))) + 15; }

DiffractionPattern single_mode_pattern(const GratingMode& mode, const PulseParams& pulse,
                                       std::optional<int> truncation) {
  const double w = dimensionless_phase(mode.depth(), pulse.tau());
  if (!std::isfinite(w)) throw DomainError("grating depth times tau must be finite");
  const int n_max = truncation.value_or(default_truncation(w));
  check_truncation(n_max);

  const auto p = order_probabilities(w, n_max);
  DiffractionPattern out;
  out.truncation = n_max;
  out.orders.reserve(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    out.orders.push_back({n, 0, 2.0 * n * mode.wave_vector(), p[std::abs(n)], 1});
  }
  out.tail_bound = finalize_tail(out.orders);
  return out;
}

DiffractionPattern two_mode_pattern(const GratingMode& dipole, const GratingMode& quad,
                                    const PulseParams& pulse, std::optional<int> truncation,
                                    double merge_tolerance) {
  if (dipole.kind() != TransitionKind::Dipole) throw DomainError("two_mode_pattern: first mode must be a dipole mode");
  if (quad.kind() != TransitionKind::Quadrupole) {
    throw DomainError("two_mode_pattern: second mode must be a quadrupole mode");
  }
  const double w_d = dimensionless_phase(dipole.depth(), pulse.tau());
  const double w_q = dimensionless_phase(quad.depth(), pulse.tau());
  if (!std::isfinite(w_d) || !std::isfinite(w_q)) throw DomainError("grating depth times tau must be finite");
  const int n_max = truncation.value_or(default_truncation(std::max(w_d, w_q)));
  check_truncation(n_max);

  const auto p_d = order_probabilities(w_d, n_max);
  const auto p_q = order_probabilities(w_q, n_max);
  const WaveVector k_d = dipole.wave_vector();
  const WaveVector k_q = quad.wave_vector();

  std::vector<DiffractionOrder> raw;
  raw.reserve((2 * n_max + 1) * (2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) {
    for (int m = -n_max; m <= n_max; ++m) {
      raw.push_back({n, m, 2.0 * n * k_d + 2.0 * m * k_q, p_d[std::abs(n)] * p_q[std::abs(m)], 1});
    }
  }

  std::vector<double> q(raw.size());
  std::transform(raw.begin(), raw.end(), q.begin(), [](const DiffractionOrder& o) { return o.momentum_transfer.si(); });
  const double tol = merge_tolerance * std::max(k_d.si(), k_q.si());
  const auto groups = group_by_momentum(q, tol);

  DiffractionPattern out;
  out.truncation = n_max;
  if (groups.size() == raw.size()) {
    out.orders = std::move(raw);
  } else {
    out.merged = true;
    for (const auto& g : groups) {
      std::size_t rep = g.front();
      for (std::size_t i : g) {
        if (label_less(raw[i].n, raw[i].m, raw[rep].n, raw[rep].m)) rep = i;
      }
      std::vector<double> ps;
      for (std::size_t i : g) ps.push_back(raw[i].probability);
      std::sort(ps.begin(), ps.end());
      DiffractionOrder o = raw[rep];
      o.probability = std::accumulate(ps.begin(), ps.end(), 0.0);
      o.multiplicity = static_cast<int>(g.size());
      out.orders.push_back(o);
    }
    std::sort(out.orders.begin(), out.orders.end(), [](const DiffractionOrder& a, const DiffractionOrder& b) {
      return a.n != b.n ? a.n < b.n : a.m < b.m;
    });
  }
  out.tail_bound = finalize_tail(out.orders);
  return out;
}

std::vector<OrderAmplitude> pattern_amplitudes(std::span<const GratingMode> modes, const PulseParams& pulse,
                                               int truncation) {
  if (modes.empty() || modes.size() > 2) throw DomainError("pattern_amplitudes: expected one or two modes");
  check_truncation(truncation);

  struct ModeData {
    double a;            // signed V0 tau / hbar
    double arg_sign;     // sign of the Bessel argument relative to |a|/2
    std::vector<double> j;
  };
  std::vector<ModeData> data;
  for (const auto& mode : modes) {
    const double a = mode.signed_depth().si() * pulse.tau().si() / constants::hbar.si();
    // cos^2: J_n(-a/2); sin^2: J_n(+a/2). Expressed via |a|/2 and a sign.
    const double arg = mode.shape() == PotentialShape::CosSq ? -0.5 * a : 0.5 * a;
    data.push_back({a, arg < 0.0 ? -1.0 : 1.0, bessel_j_sequence(truncation, std::fabs(arg))});
  }

  std::vector<OrderAmplitude> out;
  const int m_max = modes.size() == 2 ? truncation : 0;
  for (int n = -truncation; n <= truncation; ++n) {
    const auto c_n = mode_coefficient(data[0].arg_sign, data[0].j, data[0].a, n);
    for (int m = -m_max; m <= m_max; ++m) {
      OrderAmplitude o;
      o.n = n;
      o.m = m;
      o.momentum_transfer = 2.0 * n * modes[0].wave_vector();
      o.amplitude = c_n;
      if (modes.size() == 2) {
        o.momentum_transfer += 2.0 * m * modes[1].wave_vector();
        o.amplitude *= mode_coefficient(data[1].arg_sign, data[1].j, data[1].a, m);
      }
      out.push_back(o);
    }
  }
  return out;
}

std::vector<LadderPopulation> coherent_populations(std::span<const OrderAmplitude> amplitudes,
                                                   double merge_tolerance) {
  std::vector<double> q;
  double scale = 0.0;
  for (const auto& a : amplitudes) {
    q.push_back(a.momentum_transfer.si());
    scale = std::max(scale, std::fabs(a.momentum_transfer.si()));
  }
  const auto groups = group_by_momentum(q, merge_tolerance * std::max(scale, 1e-300));
  std::vector<LadderPopulation> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    LadderPopulation lp;
    lp.momentum_transfer = amplitudes[g.front()].momentum_transfer;
    for (std::size_t i : g) lp.amplitude += amplitudes[i].amplitude;
    lp.probability = std::norm(lp.amplitude);
    out.push_back(lp);
  }
  return out;
}

std::vector<OrderLabel> parse_order_labels(const std::string& text) {
  std::vector<OrderLabel> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw DomainError("empty order label in '" + text + "'");
    OrderLabel label;
    const auto colon = token.find(':');
    try {
      if (colon != std::string::npos) {
        std::size_t used = 0;
        const std::string ns = token.substr(0, colon);
        const std::string ms = token.substr(colon + 1);
        label.n = std::stoi(ns, &used);
        if (used != ns.size()) throw DomainError("");
        label.m = std::stoi(ms, &used);
        if (used != ms.size()) throw DomainError("");
      } else if (token.size() == 2 && std::isdigit(static_cast<unsigned char>(token[0])) &&
                 std::isdigit(static_cast<unsigned char>(token[1]))) {
        label.n = token[0] - '0';
        label.m = token[1] - '0';
      } else {
        throw DomainError("");
      }
    } catch (const std::exception&) {
      throw DomainError("bad order label '" + token + "' (use two digits like 10, or n:m)");
    }
    out.push_back(label);
  }
  if (out.empty()) throw DomainError("order list is empty");
  return out;
}

std::string single_mode_label(int n) { return "sm_n" + std::to_string(n); }

std::string two_mode_label(int n, int m) { return "tm_n" + std::to_string(n) + "_m" + std::to_string(m); }

std::vector<SweepRow> pattern_sweep(const SweepConfig& config) {
  if (config.orders.empty()) throw DomainError("pattern_sweep: order list is empty");
  if (!std::isfinite(config.w_min) || !std::isfinite(config.w_max)) throw DomainError("pattern_sweep: w range must be finite");
  if (config.w_min < 0.0 || config.w_max < config.w_min) throw DomainError("pattern_sweep: need 0 <= w_min <= w_max");
  if (config.samples < 2) throw DomainError("pattern_sweep: need at least two samples");
  if (!(config.ratio >= 0.0) || !std::isfinite(config.ratio)) throw DomainError("pattern_sweep: ratio must be >= 0");

  int n_max = 0;
  for (const auto& o : config.orders) n_max = std::max({n_max, std::abs(o.n), std::abs(o.m)});

  // Dimensionless units: tau = 1 s, depth = w hbar, k = 1 rad/m.
  const PulseParams pulse{Time{1.0}};
  const WaveVector k{1.0};

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(config.samples) * config.orders.size() * 2);
  const double step = (config.w_max - config.w_min) / (config.samples - 1);
  for (int i = 0; i < config.samples; ++i) {
    const double w = i == config.samples - 1 ? config.w_max : config.w_min + step * i;
    const GratingMode dip(k, depth_for_phase(w, pulse.tau()), TransitionKind::Dipole);
    const GratingMode quad(k, depth_for_phase(config.ratio * w, pulse.tau()), TransitionKind::Quadrupole);
    const auto sm_d = single_mode_pattern(dip, pulse, n_max);
    const auto sm_q = single_mode_pattern(quad, pulse, n_max);

    for (const auto& o : config.orders) {
      if (o.m == 0) rows.push_back({w, single_mode_label(o.n), sm_d.probability(o.n)});
    }
    for (const auto& o : config.orders) {
      rows.push_back({w, two_mode_label(o.n, o.m), sm_d.probability(o.n) * sm_q.probability(o.m)});
    }
  }
  return rows;
}

}  // namespace kd
