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

#include "kd/propagator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <string>

#include "kd/error.hpp"
#include "kd/raman_nath.hpp"

namespace kd {
namespace {

using cplx = std::complex<double>;

constexpr double kLatticeTolerance = 1e-6;

// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place FFTW transform pair on an owned, FFTW-aligned buffer.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n), data_(fftw_alloc_complex(n)) {
    if (data_ == nullptr) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(size, data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(size, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(data_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  cplx* data() { return reinterpret_cast<cplx*>(data_); }
  std::span<cplx> span() { return {data(), n_}; }

  void forward() { fftw_execute(forward_); }
  /// Normalized inverse transform.
  void backward() {
    fftw_execute(backward_);
    const double inv = 1.0 / static_cast<double>(n_);
    for (auto& v : span()) v *= inv;
  }

  void load(std::span<const cplx> in) { std::copy(in.begin(), in.end(), data()); }

 private:
  std::size_t n_;
  fftw_complex* data_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

// Wave vector of FFT bin j (standard ordering: 0..G/2-1, then -G/2..-1).
double bin_wave_vector(std::size_t j, std::size_t g, double spacing) {
  const auto signed_j = j < g / 2 ? static_cast<long long>(j) : static_cast<long long>(j) - static_cast<long long>(g);
  return spacing * static_cast<double>(signed_j);
}

// Nearest lattice index of k, or throws.
long long lattice_index(WaveVector k, WaveVector spacing, const char* what) {
  const double x = k.si() / spacing.si();
  const double r = std::round(x);
  if (std::fabs(x - r) > kLatticeTolerance) {
    throw DomainError(std::string(what) + " is not on the reciprocal lattice of the box (k L / 2 pi = " +
                      std::to_string(x) + ")");
  }
  return static_cast<long long>(r);
}

std::size_t bin_of(long long j, std::size_t g, const char* what) {
  const auto half = static_cast<long long>(g / 2);
  if (j < -half || j >= half) throw DomainError(std::string(what) + " lies beyond the grid's momentum range");
  return static_cast<std::size_t>(j < 0 ? j + static_cast<long long>(g) : j);
}

void check_commensurate(Length box, const PotentialField& potential) {
  for (const auto& mode : potential.modes()) {
    const double ratio = box / mode.period();
    const double r = std::round(ratio);
    if (r < 1.0 || std::fabs(ratio - r) > 1e-9 * ratio) {
      throw DomainError("box length is not an integer number of potential periods (L / period = " +
                        std::to_string(ratio) + ")");
    }
  }
}

double sum_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

}  // namespace

WavefunctionGrid::WavefunctionGrid(std::vector<cplx> amplitudes, Length box, Mass mass, Unchecked)
    : psi_(std::move(amplitudes)), box_(box), mass_(mass) {}

WavefunctionGrid::WavefunctionGrid(std::vector<cplx> amplitudes, Length box, Mass mass)
    : WavefunctionGrid(std::move(amplitudes), box, mass, Unchecked{}) {
  if (psi_.size() < 2 || !std::has_single_bit(psi_.size())) {
    throw DomainError("grid size must be a power of two, got " + std::to_string(psi_.size()));
  }
  if (!(box.si() > 0.0) || !std::isfinite(box.si())) throw DomainError("box length must be positive and finite");
  if (!(mass.si() > 0.0)) throw DomainError("atom mass must be positive");
  if (std::fabs(norm() - 1.0) > 1e-12) {
    throw DomainError("wavefunction is not normalized (norm = " + std::to_string(norm()) + ")");
  }
}

WavefunctionGrid WavefunctionGrid::plane_wave(std::size_t points, Length box, Mass mass, WaveVector k0) {
  if (points < 2 || !std::has_single_bit(points)) {
    throw DomainError("grid size must be a power of two, got " + std::to_string(points));
  }
  if (!(box.si() > 0.0)) throw DomainError("box length must be positive");
  const WaveVector spacing = 2.0 * constants::pi / box;
  const long long j0 = lattice_index(k0, spacing, "initial wave vector k0");
  bin_of(j0, points, "initial wave vector k0");

  const double amp = 1.0 / std::sqrt(box.si());
  std::vector<cplx> psi(points);
  for (std::size_t i = 0; i < points; ++i) {
    // Exact lattice phase 2 pi j0 i / G, reduced mod G to keep the argument small.
    const auto num = (j0 * static_cast<long long>(i)) % static_cast<long long>(points);
    const double phase = 2.0 * constants::pi * static_cast<double>(num) / static_cast<double>(points);
    psi[i] = std::polar(amp, phase);
  }
  return WavefunctionGrid(std::move(psi), box, mass);
}

WaveVector WavefunctionGrid::lattice_spacing() const { return 2.0 * constants::pi / box_; }

double WavefunctionGrid::norm() const { return sum_norm(psi_) * dx().si(); }

int default_steps(const PotentialField& potential, const PulseParams& pulse) {
  const double phase = dimensionless_phase(potential.total_depth(), pulse.tau());
  return std::max(1, static_cast<int>(std::ceil(phase / 0.01)));
}

WavefunctionGrid evolve(const WavefunctionGrid& grid, const PotentialField& potential, const PulseParams& pulse,
                        int steps, bool include_kinetic) {
  if (steps < 1) throw DomainError("evolve: steps must be >= 1");
  check_commensurate(grid.box_length(), potential);

  const std::size_t g = grid.size();
  const double dt = pulse.tau().si() / steps;
  const double hbar = constants::hbar.si();

  std::vector<cplx> potential_step(g);
  for (std::size_t i = 0; i < g; ++i) {
    potential_step[i] = std::polar(1.0, -potential(grid.position(i)).si() * dt / hbar);
  }

  Fft fft(g);
  fft.load(grid.amplitudes());
  auto psi = fft.span();

  if (!include_kinetic) {
    for (int s = 0; s < steps; ++s) {
      for (std::size_t i = 0; i < g; ++i) psi[i] *= potential_step[i];
    }
  } else {
    const double spacing = grid.lattice_spacing().si();
    const double mass = grid.mass().si();
    std::vector<cplx> half_kinetic(g);
    for (std::size_t j = 0; j < g; ++j) {
      const double k = bin_wave_vector(j, g, spacing);
      const double phase = std::isinf(mass) ? 0.0 : hbar * k * k * dt / (4.0 * mass);
      half_kinetic[j] = std::polar(1.0, -phase);
    }
    fft.forward();
    for (int s = 0; s < steps; ++s) {
      for (std::size_t j = 0; j < g; ++j) psi[j] *= half_kinetic[j];
      fft.backward();
      for (std::size_t i = 0; i < g; ++i) psi[i] *= potential_step[i];
      fft.forward();
      for (std::size_t j = 0; j < g; ++j) psi[j] *= half_kinetic[j];
    }
    fft.backward();
  }

  return WavefunctionGrid(std::vector<cplx>(psi.begin(), psi.end()), grid.box_length(), grid.mass(),
                          WavefunctionGrid::Unchecked{});
}

const MomentumPopulation* MomentumSpectrum::find(WaveVector k) const {
  for (const auto& p : ladder) {
    if (std::fabs(p.k.si() - k.si()) <= 1e-9 * std::max(1.0, std::fabs(k.si()))) return &p;
  }
  return nullptr;
}

double MomentumSpectrum::population_at(WaveVector k) const {
  const auto* p = find(k);
  return p == nullptr ? 0.0 : p->population;
}

MomentumSpectrum momentum_spectrum(const WavefunctionGrid& grid, std::span<const WaveVector> ladder) {
  const std::size_t g = grid.size();
  const WaveVector spacing = grid.lattice_spacing();

  std::vector<std::size_t> bins;
  std::vector<WaveVector> points;
  for (const auto& k : ladder) {
    const auto bin = bin_of(lattice_index(k, spacing, "ladder momentum"), g, "ladder momentum");
    if (std::find(bins.begin(), bins.end(), bin) == bins.end()) {
      bins.push_back(bin);
      points.push_back(k);
    }
  }

  Fft fft(g);
  fft.load(grid.amplitudes());
  fft.forward();
  const auto coeff = fft.span();
  // a_j = sqrt(L) / G * FFT_j, so that sum |a_j|^2 = sum |psi|^2 dx.
  const double scale = std::sqrt(grid.box_length().si()) / static_cast<double>(g);

  MomentumSpectrum out;
  std::vector<bool> on_ladder(g, false);
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const cplx a = coeff[bins[i]] * scale;
    out.ladder.push_back({points[i], std::norm(a), a});
    on_ladder[bins[i]] = true;
  }
  double off = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < g; ++j) {
    const double p = std::norm(coeff[j] * scale);
    total += p;
    if (!on_ladder[j]) off += p;
  }
  out.off_ladder = off;
  out.total = total;
  return out;
}

std::vector<WaveVector> ladder_momenta(WaveVector k0, std::span<const GratingMode> modes, int truncation) {
  if (modes.empty() || modes.size() > 2) throw DomainError("ladder_momenta: expected one or two modes");
  if (truncation < 0) throw DomainError("ladder_momenta: truncation must be non-negative");
  std::vector<WaveVector> out;
  const int m_max = modes.size() == 2 ? truncation : 0;
  for (int n = -truncation; n <= truncation; ++n) {
    for (int m = -m_max; m <= m_max; ++m) {
      WaveVector k = k0 + 2.0 * n * modes[0].wave_vector();
      if (modes.size() == 2) k += 2.0 * m * modes[1].wave_vector();
      out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end());
  const double scale = modes[0].wave_vector().si();
  out.erase(std::unique(out.begin(), out.end(),
                        [&](WaveVector a, WaveVector b) { return std::fabs(a.si() - b.si()) <= 1e-9 * scale; }),
            out.end());
  return out;
}

AngularFrequency recoil_frequency(WaveVector k_l, Mass mass) {
  const WaveVector q = 2.0 * k_l;
  return constants::hbar * (q * q) / (2.0 * mass);
}

RamanNathReport raman_nath_error(const GratingMode& mode, const PulseParams& pulse, const GridSpec& spec,
                                 Mass atom_mass, std::optional<int> steps) {
  if (spec.periods < 1) throw DomainError("raman_nath_error: need at least one potential period");
  const Length box = static_cast<double>(spec.periods) * mode.period();
  const auto grid = WavefunctionGrid::plane_wave(spec.points, box, atom_mass, pulse.k0());
  const std::array<GratingMode, 1> modes{mode};
  const auto potential = build_potential(modes);

  RamanNathReport report;
  report.recoil_phase = recoil_frequency(mode.wave_vector(), atom_mass) * pulse.tau();
  report.steps = steps.value_or(
      std::max(default_steps(potential, pulse), static_cast<int>(std::ceil(100.0 * report.recoil_phase))));

  const auto with_kinetic = evolve(grid, potential, pulse, report.steps, true);
  const auto without_kinetic = evolve(grid, potential, pulse, report.steps, false);

  const int n_max = default_truncation(dimensionless_phase(mode.depth(), pulse.tau()));
  const auto ladder = ladder_momenta(pulse.k0(), modes, n_max);
  const auto s_kin = momentum_spectrum(with_kinetic, ladder);
  const auto s_rn = momentum_spectrum(without_kinetic, ladder);

  for (int n = -n_max; n <= n_max; ++n) {
    const WaveVector k = pulse.k0() + 2.0 * n * mode.wave_vector();
    OrderDeviation d;
    d.n = n;
    d.p_kinetic = s_kin.population_at(k);
    d.p_raman_nath = s_rn.population_at(k);
    d.deviation = std::fabs(d.p_kinetic - d.p_raman_nath);
    report.max_deviation = std::max(report.max_deviation, d.deviation);
    report.orders.push_back(d);
  }
  return report;
}

}  // namespace kd
