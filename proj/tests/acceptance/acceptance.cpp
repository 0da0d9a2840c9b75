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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../cli_fixtures.hpp"
#include "kd/bragg.hpp"
#include "kd/cli.hpp"
#include "kd/feasibility.hpp"
#include "kd/propagator.hpp"
#include "kd/raman_nath.hpp"

namespace {

using namespace kd;
using cplx = std::complex<double>;

const WaveVector kK{1.0e7};
const Mass kSodium = 22.98976928 * constants::atomic_mass_unit;
const PulseParams kPulse{Time{1e-7}};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// J_n(x) for any integer n.
double jn(int n, double x) {
  const double j = std::cyl_bessel_j(static_cast<double>(std::abs(n)), std::fabs(x));
  const bool odd = (std::abs(n) % 2) == 1;
  const bool flip = odd && ((n < 0) != (x < 0.0));
  return flip ? -j : j;
}

cplx ipow(int n) {
  static const std::array<cplx, 4> p{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  return p[static_cast<std::size_t>(((n % 4) + 4) % 4)];
}

// Plane-wave amplitudes after a thin grating, computed from the generating
// function exp(i z cos t) = sum i^n J_n(z) e^{int}: cos^2 gives i^n J_n(-s w/2),
// sin^2 gives i^n J_n(s w/2), with s = +1 for a repulsive potential. Keyed by
// momentum transfer in units of the lattice spacing `unit`; commensurate
// labels are summed coherently.
std::map<long long, cplx> analytic_amplitudes(std::span<const GratingMode> modes, Time tau, WaveVector unit,
                                              int n_max) {
  std::vector<std::vector<std::pair<long long, cplx>>> factors;
  for (const auto& mode : modes) {
    const double s = mode.sign() == PotentialSign::Repulsive ? 1.0 : -1.0;
    const double w = dimensionless_phase(mode.depth(), tau);
    const double z = (mode.shape() == PotentialShape::CosSq ? -0.5 : 0.5) * s * w;
    std::vector<std::pair<long long, cplx>> f;
    for (int n = -n_max; n <= n_max; ++n) {
      f.emplace_back(std::llround(2.0 * n * mode.wave_vector().si() / unit.si()), ipow(n) * jn(n, z));
    }
    factors.push_back(std::move(f));
  }
  std::map<long long, cplx> out{{0, cplx(1.0, 0.0)}};
  for (const auto& f : factors) {
    std::map<long long, cplx> next;
    for (const auto& [q, a] : out) {
      for (const auto& [dq, b] : f) next[q + dq] += a * b;
    }
    out = std::move(next);
  }
  return out;
}

struct GridRun {
  MomentumSpectrum spectrum;
  std::vector<long long> keys;
};

// Zero-kinetic propagation from rest over `periods` periods of the first mode.
GridRun thin_grating_run(std::span<const GratingMode> modes, int periods, std::size_t points,
                         const std::map<long long, cplx>& expected, WaveVector unit) {
  const Length box = static_cast<double>(periods) * modes[0].period();
  const auto grid = WavefunctionGrid::plane_wave(points, box, kSodium, WaveVector{0.0});
  const auto out = evolve(grid, build_potential(modes), kPulse, 64, false);
  GridRun r;
  std::vector<WaveVector> ladder;
  for (const auto& [q, a] : expected) {
    const WaveVector k = unit * static_cast<double>(q);
    if (std::fabs(k.si()) < grid.lattice_spacing().si() * (static_cast<double>(points) / 2.0 - 1.0)) {
      ladder.push_back(k);
      r.keys.push_back(q);
    }
  }
  r.spectrum = momentum_spectrum(out, ladder);
  return r;
}

struct Config {
  std::vector<GratingMode> modes;
  int periods;
  WaveVector unit;
  std::string name;
};

std::vector<Config> cross_configs(const std::vector<double>& ws, bool attractive_too) {
  std::vector<Config> cs;
  const std::vector<PotentialSign> signs = attractive_too
                                               ? std::vector{PotentialSign::Repulsive, PotentialSign::Attractive}
                                               : std::vector{PotentialSign::Repulsive};
  for (const auto sign : signs) {
    for (const double w : ws) {
      const Energy v = depth_for_phase(w, kPulse.tau());
      const Energy vq = depth_for_phase(0.8 * w, kPulse.tau());
      cs.push_back({{GratingMode(kK, v, TransitionKind::Dipole, sign)}, 32, kK, "CosSq w=" + fmt("%g", w)});
      cs.push_back({{GratingMode(kK, v, TransitionKind::Quadrupole, sign)}, 32, kK, "SinSq w=" + fmt("%g", w)});
      // k_Q / k_D = p / q: the lattice unit k_D / q makes every momentum an integer.
      for (const auto [p, q] : std::array<std::pair<int, int>, 3>{{{1, 1}, {1, 2}, {2, 3}}}) {
        cs.push_back({{GratingMode(kK, v, TransitionKind::Dipole, sign),
                       GratingMode(kK * (static_cast<double>(p) / q), vq, TransitionKind::Quadrupole, sign)},
                      12 * q,
                      kK / static_cast<double>(q),
                      "two-mode " + std::to_string(p) + "/" + std::to_string(q) + " w=" + fmt("%g", w)});
      }
    }
  }
  return cs;
}

// 1. Single-mode totals at default truncation.
Outcome bessel_normalization() {
  double worst = 0.0;
  for (const double w : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    const GratingMode mode(kK, depth_for_phase(w, kPulse.tau()), TransitionKind::Quadrupole);
    worst = std::max(worst, std::fabs(single_mode_pattern(mode, kPulse).total() - 1.0));
  }
  return {worst < 1e-10, "max |total - 1| = " + fmt("%.2e", worst)};
}

// 2. Zero-kinetic spectra against Bessel probabilities.
Outcome cross_oracle() {
  double worst = 0.0;
  std::string where;
  for (const auto& c : cross_configs({1.0, 2.0, 4.0}, false)) {
    const auto expected = analytic_amplitudes(c.modes, kPulse.tau(), c.unit, 40);
    const auto run = thin_grating_run(c.modes, c.periods, 4096, expected, c.unit);
    for (std::size_t i = 0; i < run.keys.size(); ++i) {
      const double d = std::fabs(run.spectrum.ladder[i].population - std::norm(expected.at(run.keys[i])));
      if (d > worst) {
        worst = d;
        where = c.name;
      }
    }
    worst = std::max(worst, run.spectrum.off_ladder);
  }
  return {worst < 1e-10, "max deviation " + fmt("%.2e", worst) + (where.empty() ? "" : " (" + where + ")")};
}

// 3. Amplitudes including phases, up to one global phase per run.
Outcome phase_verification() {
  double worst = 0.0;
  for (const auto& c : cross_configs({1.0, 2.0, 4.0}, true)) {
    const auto expected = analytic_amplitudes(c.modes, kPulse.tau(), c.unit, 40);
    const auto run = thin_grating_run(c.modes, c.periods, 4096, expected, c.unit);
    // Global phase from the largest component.
    std::size_t ref = 0;
    for (std::size_t i = 0; i < run.keys.size(); ++i) {
      if (std::norm(expected.at(run.keys[i])) > std::norm(expected.at(run.keys[ref]))) ref = i;
    }
    const cplx g = run.spectrum.ladder[ref].amplitude / expected.at(run.keys[ref]);
    const cplx unit_phase = g / std::abs(g);
    for (std::size_t i = 0; i < run.keys.size(); ++i) {
      worst = std::max(worst, std::abs(run.spectrum.ladder[i].amplitude - unit_phase * expected.at(run.keys[i])));
    }
    // The library's debug amplitudes must carry the same phases.
    const auto amps = pattern_amplitudes(c.modes, kPulse, 40);
    std::map<long long, cplx> summed;
    for (const auto& a : amps) summed[std::llround(a.momentum_transfer.si() / c.unit.si())] += a.amplitude;
    const cplx g_lib = summed.at(run.keys[ref]) / expected.at(run.keys[ref]);
    for (const auto& [q, a] : expected) {
      worst = std::max(worst, std::abs(summed[q] - g_lib / std::abs(g_lib) * a));
    }
  }
  return {worst < 1e-8, "max amplitude deviation " + fmt("%.2e", worst)};
}

// 4. Low-order curves versus w, checked as properties.
Outcome diffraction_curves() {
  SweepConfig cfg;
  cfg.w_min = 0.0;
  cfg.w_max = 12.0;
  cfg.samples = 500;
  cfg.ratio = 0.8;
  cfg.orders = parse_order_labels("00,10,01");
  const auto rows = pattern_sweep(cfg);

  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  for (const auto& r : rows) curves[r.label].emplace_back(r.w, r.probability);
  const std::array<std::string, 5> labels{"sm_n0", "sm_n1", "tm_n0_m0", "tm_n1_m0", "tm_n0_m1"};
  for (const auto& l : labels) {
    if (curves[l].size() != 500) return {false, "curve " + l + " missing samples"};
  }

  bool start = true;
  for (const auto& l : labels) {
    const double expected = (l == "sm_n0" || l == "tm_n0_m0") ? 1.0 : 0.0;
    start = start && curves[l].front().first == 0.0 && curves[l].front().second == expected;
  }
  bool below = true;
  for (std::size_t i = 1; i < 500; ++i) {
    below = below && curves["tm_n0_m0"][i].second <= curves["sm_n0"][i].second;
    below = below && curves["tm_n1_m0"][i].second <= curves["sm_n1"][i].second;
  }
  double jump = 0.0;
  for (const auto& l : labels) {
    for (std::size_t i = 1; i < 500; ++i) jump = std::max(jump, std::fabs(curves[l][i].second - curves[l][i - 1].second));
  }
  return {start && below && jump <= 0.02, std::string("w=0 start ") + (start ? "ok" : "bad") + ", two-mode below " +
                                              (below ? "ok" : "bad") + ", max jump " + fmt("%.4f", jump)};
}

// 5. Bragg complementarity and the V0 = 1e-10 eV, tau = 10 us point.
Outcome bragg_scale() {
  bool exact = true;
  for (int i = 0; i <= 1000; ++i) {
    const Energy v = depth_for_phase(0.04 * i, kPulse.tau());
    const auto r = bragg_probabilities(GratingMode(kK, v, TransitionKind::Quadrupole), PulseParams(kPulse.tau(), kK));
    exact = exact && (r.p_transmit + r.p_scatter == 1.0);
  }
  const Time tau{1e-5};
  const GratingMode mode(kK, energy_from_ev(1e-10), TransitionKind::Quadrupole);
  const double theta = mode.depth() * tau / (4.0 * constants::hbar);
  const auto r = bragg_probabilities(mode, PulseParams(tau, kK));
  const double s = std::sin(theta);
  const bool point = std::fabs(theta - 0.380) <= 0.005 * 0.380 && std::fabs(r.p_scatter - s * s) < 1e-15;
  return {exact && point, "V0 tau / 4 hbar = " + fmt("%.6f", theta) + ", P_sca = " + fmt("%.6f", r.p_scatter) +
                              (exact ? ", sums exact" : ", sums inexact")};
}

// 6. Feasibility regression against the presets.
Outcome feasibility() {
  const auto presets = load_presets(KD_PRESETS_FILE);
  const auto& na = find_preset(presets, "na");
  const auto& ca = find_preset(presets, "ca");

  const Time tau{1e-6 / 14.0};
  const Energy v_na = constants::hbar * AngularFrequency{18e6};
  const auto r = check_regime(na.gamma, na.default_detuning, PulseParams(tau), v_na, {}, &na);
  const bool na_ok = r.all_pass() && std::fabs(r.adiabatic_margin / 71.0 - 1.0) < 0.05 &&
                     std::fabs(r.emission_ratio / 1e6 - 1.0) < 0.05;

  const AngularFrequency delta{1e8};
  const Energy v = energy_from_ev(1e-8);
  const double i_ca = required_intensity(ca, v, delta).si();
  const double i_na = required_intensity(na, v, delta).si();
  const bool ca_ok = std::fabs(std::log10(i_ca / 1e11)) <= 1.0;
  const bool ratio_ok = i_ca / i_na > 1e2;
  return {na_ok && ca_ok && ratio_ok, "Na Delta tau = " + fmt("%.2f", r.adiabatic_margin) + ", Delta/Gamma = " +
                                          fmt("%.3g", r.emission_ratio) + "; Ca I = " + fmt("%.3g", i_ca) +
                                          " W/m^2; Ca/Na = " + fmt("%.3g", i_ca / i_na)};
}

// 7. Kinetic-on versus kinetic-off deviation grows with omega_rec tau.
Outcome raman_nath_breakdown() {
  std::vector<double> dev;
  for (const double phase : {0.01, 0.1, 1.0, 10.0}) {
    const PulseParams pulse(phase / recoil_frequency(kK, kSodium));
    const GratingMode mode(kK, depth_for_phase(2.0, pulse.tau()), TransitionKind::Quadrupole);
    dev.push_back(raman_nath_error(mode, pulse, GridSpec{2048, 16}, kSodium).max_deviation);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < dev.size(); ++i) increasing = increasing && dev[i] > dev[i - 1];
  std::string detail = "deviations";
  for (const double d : dev) detail += " " + fmt("%.3g", d);
  return {increasing && dev.back() > 0.1, detail};
}

// 8. Norm conservation and convergence order of the splitting.
Outcome propagator_numerics() {
  const PulseParams pulse(1.0 / recoil_frequency(kK, kSodium));
  const GratingMode mode(kK, depth_for_phase(2.0, pulse.tau()), TransitionKind::Quadrupole);
  const std::array modes{mode};
  const auto potential = build_potential(modes);
  const auto grid = WavefunctionGrid::plane_wave(1024, 8.0 * mode.period(), kSodium, WaveVector{0.0});
  const double drift = std::fabs(evolve(grid, potential, pulse, 10000, true).norm() - 1.0);

  const auto ladder = ladder_momenta(WaveVector{0.0}, modes, 10);
  const auto reference = momentum_spectrum(evolve(grid, potential, pulse, 6400, true), ladder);
  const auto error = [&](int steps) {
    const auto s = momentum_spectrum(evolve(grid, potential, pulse, steps, true), ladder);
    double e = 0.0;
    for (std::size_t i = 0; i < s.ladder.size(); ++i) {
      e = std::max(e, std::abs(s.ladder[i].amplitude - reference.ladder[i].amplitude));
    }
    return e;
  };
  const double order = std::log2(error(25) / error(50));
  return {drift < 1e-12 && std::fabs(order - 2.0) <= 0.2,
          "norm drift " + fmt("%.2e", drift) + ", observed order " + fmt("%.3f", order)};
}

// 9. Golden CLI output.
Outcome cli_determinism() {
  std::string failed;
  for (const auto& f : cli_fixtures(KD_PRESETS_FILE)) {
    std::vector<std::string> args{"kdiff"};
    args.insert(args.end(), f.args.begin(), f.args.end());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    std::ifstream in(std::filesystem::path(KD_GOLDEN_DIR) / (f.name + ".csv"), std::ios::binary);
    std::stringstream golden;
    golden << in.rdbuf();
    if (code != 0 || !in || out.str() != golden.str()) failed += " " + f.name;
  }
  return {failed.empty(), failed.empty() ? "6 commands byte-identical" : "mismatch:" + failed};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 for no runtime limit
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bessel-normalization", 1.0, bessel_normalization},
      {2, "cross-oracle-equivalence", 30.0, cross_oracle},
      {3, "phase-verification", 0.0, phase_verification},
      {4, "diffraction-curves", 5.0, diffraction_curves},
      {5, "bragg-complementarity-and-scale", 0.0, bragg_scale},
      {6, "feasibility-regression", 0.0, feasibility},
      {7, "raman-nath-breakdown", 0.0, raman_nath_breakdown},
      {8, "propagator-numerics", 0.0, propagator_numerics},
      {9, "cli-determinism", 0.0, cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%g", c.budget_s) + " s budget";
    }
    std::printf("%s %d %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    failures += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
