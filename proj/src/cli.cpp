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

#include "kd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "kd/bragg.hpp"
#include "kd/core.hpp"
#include "kd/error.hpp"
#include "kd/feasibility.hpp"
#include "kd/io.hpp"
#include "kd/propagator.hpp"
#include "kd/raman_nath.hpp"

#ifndef KD_DEFAULT_PRESETS
#define KD_DEFAULT_PRESETS "data/presets.json"
#endif

namespace kd::cli {
namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Laser wave vector used when the command only needs ratios (589 nm).
const WaveVector kReferenceK{2.0 * constants::pi / 589e-9};
// Interaction time used when only w is given.
const Time kReferenceTau{1e-7};
const Mass kSodiumMass = 22.98976928 * constants::atomic_mass_unit;

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--output", o.path, "Write to this file instead of stdout");
}

void emit(const OutputOptions& o, const std::string& csv, const std::function<nlohmann::json()>& json,
          std::ostream& out) {
  const std::string payload = o.format == "json" ? json().dump(2) + "\n" : csv;
  if (o.path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + o.path + "'");
  f << payload;
  if (!f) throw IoError("failed writing output file '" + o.path + "'");
}

// One grating mode given either as w directly or as a depth in eV plus tau.
struct Strength {
  std::optional<double> w;
  std::optional<double> depth_ev;
};

bool given(const Strength& s) { return s.w.has_value() || s.depth_ev.has_value(); }

// Resolves the interaction time shared by all modes.
Time resolve_tau(std::initializer_list<const Strength*> modes, std::optional<double> tau) {
  bool any_depth = false;
  for (const auto* s : modes) any_depth = any_depth || s->depth_ev.has_value();
  if (any_depth && !tau) throw ConfigError("a depth in eV needs --tau");
  if (tau && !(*tau > 0.0)) throw ConfigError("--tau must be positive");
  return tau ? Time{*tau} : kReferenceTau;
}

Energy resolve_depth(const Strength& s, Time tau, const std::string& name) {
  if (s.w && s.depth_ev) throw ConfigError("give either --w" + name + " or --depth" + name + "-ev, not both");
  if (!s.w && !s.depth_ev) throw ConfigError("missing --w" + name + " or --depth" + name + "-ev");
  if (s.w) {
    if (!(*s.w >= 0.0) || !std::isfinite(*s.w)) throw ConfigError("--w" + name + " must be a finite number >= 0");
    return depth_for_phase(*s.w, tau);
  }
  if (!std::isfinite(*s.depth_ev)) throw ConfigError("--depth" + name + "-ev must be finite");
  return abs(energy_from_ev(*s.depth_ev));
}

TransitionKind parse_kind(const std::string& kind) {
  return kind == "dipole" ? TransitionKind::Dipole : TransitionKind::Quadrupole;
}

struct Rational {
  long long p = 1;
  long long q = 1;
};

Rational parse_rational(const std::string& text) {
  Rational r;
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    const std::string ps = text.substr(0, slash);
    r.p = std::stoll(ps, &used);
    if (used != ps.size()) throw std::invalid_argument(text);
    if (slash != std::string::npos) {
      const std::string qs = text.substr(slash + 1);
      r.q = std::stoll(qs, &used);
      if (used != qs.size()) throw std::invalid_argument(text);
    }
  } catch (const std::exception&) {
    throw ConfigError("--k-ratio must be a rational p/q for the propagator, got '" + text + "'");
  }
  if (r.p <= 0 || r.q <= 0) throw ConfigError("--k-ratio must be positive");
  const long long g = std::gcd(r.p, r.q);
  r.p /= g;
  r.q /= g;
  return r;
}

// ---------------------------------------------------------------------------

struct PatternArgs {
  Strength mode;
  std::optional<double> tau;
  std::string kind = "quadrupole";
  std::optional<int> orders;
  OutputOptions out;
};

void run_pattern(const PatternArgs& a, std::ostream& out) {
  const Time tau = resolve_tau({&a.mode}, a.tau);
  const GratingMode mode(kReferenceK, resolve_depth(a.mode, tau, ""), parse_kind(a.kind));
  const auto pattern = single_mode_pattern(mode, PulseParams{tau}, a.orders);
  emit(a.out, io::pattern_csv(pattern, kReferenceK), [&] { return io::pattern_to_json(pattern, kReferenceK); }, out);
}

struct TwoModeArgs {
  Strength dipole;
  Strength quad;
  std::optional<double> tau;
  double k_ratio = 0.0;
  std::optional<int> orders;
  double merge_tol = kDefaultMergeTolerance;
  OutputOptions out;
};

void run_two_mode(const TwoModeArgs& a, std::ostream& out) {
  if (!(a.k_ratio > 0.0) || !std::isfinite(a.k_ratio)) throw ConfigError("--k-ratio must be positive");
  const Time tau = resolve_tau({&a.dipole, &a.quad}, a.tau);
  const GratingMode dip(kReferenceK, resolve_depth(a.dipole, tau, "-d"), TransitionKind::Dipole);
  const GratingMode quad(a.k_ratio * kReferenceK, resolve_depth(a.quad, tau, "-q"), TransitionKind::Quadrupole);
  const auto pattern = two_mode_pattern(dip, quad, PulseParams{tau}, a.orders, a.merge_tol);
  emit(a.out, io::pattern_csv(pattern, kReferenceK), [&] { return io::pattern_to_json(pattern, kReferenceK); }, out);
}

struct BraggArgs {
  Strength mode;
  Strength quad;
  std::optional<double> tau;
  std::optional<std::string> kind;
  double k0 = 1.0;
  std::optional<double> k_ratio;
  double tolerance = kDefaultBraggTolerance;
  OutputOptions out;
};

void run_bragg(const BraggArgs& a, std::ostream& out) {
  const bool two_mode = given(a.quad);
  const Time tau = resolve_tau({&a.mode, &a.quad}, a.tau);
  const PulseParams pulse{tau, a.k0 * kReferenceK};
  BraggResult result;
  if (two_mode) {
    if (!a.k_ratio) throw ConfigError("two-mode Bragg needs --k-ratio");
    if (!(*a.k_ratio > 0.0)) throw ConfigError("--k-ratio must be positive");
    if (a.kind && *a.kind != "dipole") throw ConfigError("with a quadrupole mode, the first mode is the dipole one");
    const GratingMode dip(kReferenceK, resolve_depth(a.mode, tau, ""), TransitionKind::Dipole);
    const GratingMode quad(*a.k_ratio * kReferenceK, resolve_depth(a.quad, tau, "-q"), TransitionKind::Quadrupole);
    result = two_mode_bragg(dip, quad, pulse, a.tolerance);
  } else {
    if (a.k_ratio) throw ConfigError("--k-ratio only applies with --w-q or --depth-q-ev");
    const GratingMode mode(kReferenceK, resolve_depth(a.mode, tau, ""), parse_kind(a.kind.value_or("quadrupole")));
    result = bragg_probabilities(mode, pulse, a.tolerance);
  }
  emit(a.out, io::bragg_csv(result), [&] { return io::bragg_to_json(result); }, out);
}

struct PropagateArgs {
  Strength mode;
  Strength quad;
  std::optional<double> tau;
  std::optional<std::string> kind;
  std::optional<std::string> k_ratio;
  std::string sign = "repulsive";
  double k0 = 0.0;
  std::size_t grid = 4096;
  int periods = 32;
  std::optional<int> steps;
  std::optional<double> recoil_tau;
  std::optional<double> mass_amu;
  std::optional<int> orders;
  std::string dump_density;
  OutputOptions out;
};

// Representative label for a momentum, smallest |n| + |m| first.
std::string ladder_label(const std::vector<OrderAmplitude>& amps, double q, double tol) {
  const OrderAmplitude* best = nullptr;
  for (const auto& a : amps) {
    if (std::fabs(a.momentum_transfer.si() - q) > tol) continue;
    if (best == nullptr) {
      best = &a;
      continue;
    }
    const int ra = std::abs(a.n) + std::abs(a.m);
    const int rb = std::abs(best->n) + std::abs(best->m);
    if (ra < rb || (ra == rb && (a.n < best->n || (a.n == best->n && a.m < best->m)))) best = &a;
  }
  return std::to_string(best->n) + ":" + std::to_string(best->m);
}

void run_propagate(const PropagateArgs& a, std::ostream& out) {
  const bool two_mode = given(a.quad);
  if (a.recoil_tau && a.mass_amu) throw ConfigError("give either --recoil-tau or --mass-amu, not both");
  if (a.periods < 1) throw ConfigError("--periods must be >= 1");
  const Time tau = resolve_tau({&a.mode, &a.quad}, a.tau);
  const auto sign = a.sign == "attractive" ? PotentialSign::Attractive : PotentialSign::Repulsive;

  std::vector<GratingMode> modes;
  if (two_mode) {
    if (!a.k_ratio) throw ConfigError("two-mode propagation needs --k-ratio p/q");
    if (a.kind && *a.kind != "dipole") throw ConfigError("with a quadrupole mode, the first mode is the dipole one");
    const Rational r = parse_rational(*a.k_ratio);
    if (a.periods % r.q != 0) {
      throw DomainError("--periods must be a multiple of " + std::to_string(r.q) +
                        " so the box holds whole periods of both modes");
    }
    modes.emplace_back(kReferenceK, resolve_depth(a.mode, tau, ""), TransitionKind::Dipole, sign);
    modes.emplace_back(static_cast<double>(r.p) / static_cast<double>(r.q) * kReferenceK,
                       resolve_depth(a.quad, tau, "-q"), TransitionKind::Quadrupole, sign);
  } else {
    if (a.k_ratio) throw ConfigError("--k-ratio only applies with --w-q or --depth-q-ev");
    modes.emplace_back(kReferenceK, resolve_depth(a.mode, tau, ""), parse_kind(a.kind.value_or("quadrupole")), sign);
  }

  bool kinetic = false;
  Mass mass = kSodiumMass;
  if (a.recoil_tau) {
    if (!(*a.recoil_tau >= 0.0)) throw ConfigError("--recoil-tau must be >= 0");
    if (*a.recoil_tau > 0.0) {
      kinetic = true;
      // omega_rec tau = hbar (2k)^2 tau / 2M
      const WaveVector q = 2.0 * kReferenceK;
      mass = constants::hbar * (q * q) * tau / (2.0 * *a.recoil_tau);
    }
  } else if (a.mass_amu) {
    if (!(*a.mass_amu > 0.0)) throw ConfigError("--mass-amu must be positive");
    kinetic = true;
    mass = *a.mass_amu * constants::atomic_mass_unit;
  }

  const Length box = static_cast<double>(a.periods) * modes[0].period();
  const PulseParams pulse{tau, a.k0 * kReferenceK};
  const auto grid = WavefunctionGrid::plane_wave(a.grid, box, mass, pulse.k0());
  const auto potential = build_potential(modes);
  const int steps = a.steps.value_or(default_steps(potential, pulse));
  const auto final_state = evolve(grid, potential, pulse, steps, kinetic);

  double w_max = 0.0;
  for (const auto& m : modes) w_max = std::max(w_max, dimensionless_phase(m.depth(), tau));
  const int n_max = a.orders.value_or(default_truncation(w_max));
  if (n_max < 0) throw ConfigError("--orders must be >= 0");

  const auto amps = pattern_amplitudes(modes, pulse, n_max);
  const auto analytic = coherent_populations(amps);
  std::vector<WaveVector> ladder;
  for (const auto& lp : analytic) ladder.push_back(pulse.k0() + lp.momentum_transfer);
  const auto spectrum = momentum_spectrum(final_state, ladder);

  const double tol = kDefaultMergeTolerance * kReferenceK.si() * 4.0;
  std::vector<io::PropagationRow> rows;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double q = analytic[i].momentum_transfer.si();
    rows.push_back({ladder_label(amps, q, tol), analytic[i].momentum_transfer / kReferenceK,
                    spectrum.population_at(ladder[i]), analytic[i].probability});
  }

  if (!a.dump_density.empty()) {
    std::ofstream f(a.dump_density, std::ios::binary);
    if (!f) throw IoError("cannot open density dump '" + a.dump_density + "'");
    f << io::density_csv(final_state, modes[0].period());
    if (!f) throw IoError("failed writing density dump '" + a.dump_density + "'");
  }
  const double norm = final_state.norm();
  emit(a.out, io::propagation_csv(rows, spectrum.off_ladder),
       [&] { return io::propagation_to_json(rows, spectrum.off_ladder, norm); }, out);
}

struct SweepArgs {
  double w_min = 0.0;
  double w_max = 12.0;
  int samples = 500;
  double ratio = 0.8;
  std::string orders = "00,10,01";
  OutputOptions out;
};

void run_sweep(const SweepArgs& a, std::ostream& out) {
  SweepConfig cfg;
  cfg.w_min = a.w_min;
  cfg.w_max = a.w_max;
  cfg.samples = a.samples;
  cfg.ratio = a.ratio;
  try {
    cfg.orders = parse_order_labels(a.orders);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const auto rows = pattern_sweep(cfg);
  emit(a.out, io::sweep_csv(rows), [&] { return io::sweep_to_json(rows); }, out);
}

struct FeasibilityArgs {
  std::string preset;
  std::string presets_path = KD_DEFAULT_PRESETS;
  double tau = 0.0;
  Strength mode;
  std::optional<double> detuning;
  double emission_threshold = 100.0;
  OutputOptions out;
};

void run_feasibility(const FeasibilityArgs& a, std::ostream& out) {
  if (!(a.tau > 0.0)) throw ConfigError("--tau must be positive");
  std::vector<SpeciesPreset> presets;
  try {
    presets = load_presets(a.presets_path);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  const auto& preset = find_preset(presets, a.preset);
  const Time tau{a.tau};
  const Energy depth = resolve_depth(a.mode, tau, "");
  const AngularFrequency detuning = a.detuning ? AngularFrequency{*a.detuning} : preset.default_detuning;
  if (detuning.si() == 0.0) throw ConfigError("--detuning must be nonzero");

  RegimeThresholds thresholds;
  thresholds.emission_ratio = a.emission_threshold;
  const auto report = check_regime(preset.gamma, detuning, PulseParams{tau}, depth, thresholds, &preset);
  emit(a.out, io::regime_csv(report, thresholds), [&] { return io::regime_to_json(report, thresholds); }, out);
}

void add_strength(CLI::App* cmd, Strength& s, const std::string& suffix, const std::string& what) {
  cmd->add_option("--w" + suffix, s.w, "Dimensionless phase V0 tau / hbar of the " + what);
  cmd->add_option("--depth" + suffix + "-ev", s.depth_ev, "Depth V0 of the " + what + " in eV (needs --tau)");
}

void print_error(std::ostream& err, int code, const char* kind, const std::string& message) {
  nlohmann::json e = {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
  err << e.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kapitza-Dirac diffraction for dipole and quadrupole light gratings", "kdiff"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  PatternArgs pattern;
  auto* c_pattern = app.add_subcommand("pattern", "Single-mode thin-grating (Raman-Nath) pattern");
  add_strength(c_pattern, pattern.mode, "", "grating");
  c_pattern->add_option("--tau", pattern.tau, "Interaction time in s");
  c_pattern->add_option("--kind", pattern.kind, "Transition kind")
      ->check(CLI::IsMember({"dipole", "quadrupole"}))
      ->capture_default_str();
  c_pattern->add_option("--orders", pattern.orders, "Keep orders |n| <= N (default ceil(w) + 15)");
  add_output_options(c_pattern, pattern.out);

  TwoModeArgs two;
  auto* c_two = app.add_subcommand("two-mode", "Dipole + quadrupole two-mode thin-grating pattern");
  add_strength(c_two, two.dipole, "-d", "dipole mode");
  add_strength(c_two, two.quad, "-q", "quadrupole mode");
  c_two->add_option("--tau", two.tau, "Interaction time in s");
  c_two->add_option("--k-ratio", two.k_ratio, "k_Q / k_D")->required();
  c_two->add_option("--orders", two.orders, "Keep orders |n|, |m| <= N");
  c_two->add_option("--merge-tol", two.merge_tol, "Relative momentum tolerance for coalescing peaks")
      ->capture_default_str();
  add_output_options(c_two, two.out);

  BraggArgs bragg;
  auto* c_bragg = app.add_subcommand("bragg", "Thick-grating (Bragg) transmission and scattering");
  add_strength(c_bragg, bragg.mode, "", "grating (dipole mode in two-mode runs)");
  add_strength(c_bragg, bragg.quad, "-q", "quadrupole mode (two-mode runs)");
  c_bragg->add_option("--tau", bragg.tau, "Interaction time in s");
  c_bragg->add_option("--kind", bragg.kind, "Transition kind of the single mode")
      ->check(CLI::IsMember({"dipole", "quadrupole"}));
  c_bragg->add_option("--k0", bragg.k0, "Incident wave vector k0 / k_L (k_D in two-mode runs)")->capture_default_str();
  c_bragg->add_option("--k-ratio", bragg.k_ratio, "k_Q / k_D (two-mode runs)");
  c_bragg->add_option("--tolerance", bragg.tolerance, "Bragg acceptance |(|k0| - k_L)| / k_L")->capture_default_str();
  add_output_options(c_bragg, bragg.out);

  PropagateArgs prop;
  auto* c_prop = app.add_subcommand("propagate", "Split-operator propagation with momentum populations");
  add_strength(c_prop, prop.mode, "", "grating (dipole mode in two-mode runs)");
  add_strength(c_prop, prop.quad, "-q", "quadrupole mode (two-mode runs)");
  c_prop->add_option("--tau", prop.tau, "Interaction time in s (default 1e-7 when only w is given)");
  c_prop->add_option("--kind", prop.kind, "Transition kind of the single mode")
      ->check(CLI::IsMember({"dipole", "quadrupole"}));
  c_prop->add_option("--k-ratio", prop.k_ratio, "k_Q / k_D as p/q (two-mode runs)");
  c_prop->add_option("--sign", prop.sign, "Light-shift sign")
      ->check(CLI::IsMember({"repulsive", "attractive"}))
      ->capture_default_str();
  c_prop->add_option("--k0", prop.k0, "Incident wave vector k0 / k_L, on the box lattice")->capture_default_str();
  c_prop->add_option("--grid", prop.grid, "Grid points (power of two)")->capture_default_str();
  c_prop->add_option("--periods", prop.periods, "Box length in potential periods of the first mode")
      ->capture_default_str();
  c_prop->add_option("--steps", prop.steps, "Time steps (default keeps V0 dt / hbar <= 0.01)");
  c_prop->add_option("--recoil-tau", prop.recoil_tau, "omega_rec tau; 0 turns the kinetic term off");
  c_prop->add_option("--mass-amu", prop.mass_amu, "Atom mass in u; turns the kinetic term on");
  c_prop->add_option("--orders", prop.orders, "Report ladder orders |n|, |m| <= N");
  c_prop->add_option("--dump-density", prop.dump_density, "Write |psi(X)|^2 as CSV to this file");
  add_output_options(c_prop, prop.out);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Order probabilities versus w = V_D0 tau / hbar");
  c_sweep->add_option("--w-min", sweep.w_min, "First w sample")->capture_default_str();
  c_sweep->add_option("--w-max", sweep.w_max, "Last w sample")->capture_default_str();
  c_sweep->add_option("--samples", sweep.samples, "Number of w samples")->capture_default_str();
  c_sweep->add_option("--ratio", sweep.ratio, "V_Q0 / V_D0")->capture_default_str();
  c_sweep->add_option("--orders", sweep.orders, "Orders as nm digit pairs or n:m, comma separated")
      ->capture_default_str();
  add_output_options(c_sweep, sweep.out);

  FeasibilityArgs feas;
  auto* c_feas = app.add_subcommand("feasibility", "Regime gates and intensity estimate for a species preset");
  c_feas->add_option("--preset", feas.preset, "Species preset name")->required();
  c_feas->add_option("--presets", feas.presets_path, "Preset file")->capture_default_str();
  c_feas->add_option("--tau", feas.tau, "Interaction time in s")->required();
  add_strength(c_feas, feas.mode, "", "grating");
  c_feas->add_option("--detuning", feas.detuning, "Detuning in rad/s (default: preset value)");
  c_feas->add_option("--emission-threshold", feas.emission_threshold, "Minimum Delta / Gamma")->capture_default_str();
  add_output_options(c_feas, feas.out);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      throw ConfigError(e.what());
    }

    if (c_pattern->parsed()) run_pattern(pattern, out);
    if (c_two->parsed()) run_two_mode(two, out);
    if (c_bragg->parsed()) run_bragg(bragg, out);
    if (c_prop->parsed()) run_propagate(prop, out);
    if (c_sweep->parsed()) run_sweep(sweep, out);
    if (c_feas->parsed()) run_feasibility(feas, out);
    return kOk;
  } catch (const ConfigError& e) {
    print_error(err, kConfigError, "config", e.what());
    return kConfigError;
  } catch (const DomainError& e) {
    print_error(err, kDomainError, "domain", e.what());
    return kDomainError;
  } catch (const IoError& e) {
    print_error(err, kIoError, "io", e.what());
    return kIoError;
  }
}

}  // namespace kd::cli
