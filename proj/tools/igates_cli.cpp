// Copyright 2026 The igates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "igates/bench.hpp"
#include "igates/errors.hpp"
#include "igates/inertial.hpp"
#include "igates/krotov.hpp"
#include "igates/log.hpp"
#include "igates/parallel.hpp"
#include "igates/tomography.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace igates;

namespace {

struct Common {
  std::string config_path;
  std::string out = "out";
  std::uint64_t seed = 1;
  std::size_t steps = 0;  // 0 keeps the preset value
  int threads = 0;        // 0 uses every hardware thread
  bool verbose = false;
  std::optional<ExperimentConfig> config;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "Experiment JSON (see docs/experiments.md)")->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "Output directory");
  app->add_option("--seed", c.seed, "Base random seed");
  app->add_option("--steps", c.steps, "Integration steps per protocol (0 = preset)");
  app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  app->add_flag("-v,--verbose", c.verbose, "Verbose logging");
}

void load_config(Common& c) {
  if (c.config_path.empty()) return;
  std::ifstream in(c.config_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + c.config_path + ": " + e.what());
  }
  c.config = parse_experiment(j);
  if (c.out == "out" && j.contains("output")) c.out = c.config->output;
}

std::vector<PulseShape> shapes_or(const Common& c, std::vector<PulseShape> fallback) {
  return c.config && !c.config->shapes.empty() ? c.config->shapes : fallback;
}

std::vector<double> values_or(const Common& c, const std::string& variable, std::vector<double> fallback) {
  if (!c.config || c.config->sweep.empty()) return fallback;
  if (c.config->sweep != variable)
    throw ConfigError("this command sweeps '" + variable + "', config asks for '" + c.config->sweep + "'");
  return c.config->values;
}

fs::path prepare(const Common& c) {
  fs::path dir(c.out);
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const Common& c, json settings) {
  settings["config_file"] = c.config ? c.config->raw : json(nullptr);
  std::ofstream(dir / "manifest.json") << make_manifest(command, settings, c.seed, c.steps, resolve_threads(c.threads)).dump(2)
                                       << '\n';
}

template <class Rows>
void write_rows(const fs::path& path, const Rows& rows) {
  std::ofstream out(path);
  write_csv(out, rows);
  std::cout << "wrote " << path.string() << '\n';
}

// ---------------------------------------------------------------------------

int cmd_analyze(Common& c, const std::string& shape_name, double tf, double omega, const std::string& p1,
                const std::string& p2) {
  const auto dir = prepare(c);
  InertialReport r;
  std::optional<TimeGrid> grid;
  json settings;
  if (!p1.empty() || !p2.empty()) {
    if (p1.empty() || p2.empty()) throw ConfigError("analyze: --pulse1 and --pulse2 go together");
    const ControlPulse a = read_pulse_csv_file(p1), b = read_pulse_csv_file(p2);
    r = analyze_pulses(a, b);
    grid = a.grid();
    settings = {{"pulse1", p1}, {"pulse2", p2}};
  } else {
    const PulseShape shape = parse_pulse_shape(shape_name);
    grid.emplace(0.0, tf, (c.steps ? c.steps : 2000) + 1);
    const PulsePair pair = shape == PulseShape::quartic ? gate_pair(shape, omega, *grid, false)
                                                        : stirap_pair(shape, omega, *grid);
    r = analyze_pulses(pair.first, pair.second);
    settings = {{"shape", shape_name}, {"tf_s", tf}, {"omega_max_rad_per_s", omega}};
  }
  std::ofstream(dir / "inertial.json") << to_json(r, *grid).dump(2) << '\n';
  write_manifest(dir, "analyze", c, settings);
  std::cout << "max eta_I " << r.max_eta_I << ", mean eta_I " << r.mean_eta_I << ", max eta_A " << r.max_eta_A
            << "\nwrote " << (dir / "inertial.json").string() << '\n';
  return 0;
}

int cmd_stirap(Common& c, double detuning_tf) {
  const auto dir = prepare(c);
  StirapPreset p = fig1_preset();
  if (c.steps) p.steps = c.steps;
  const auto shapes = shapes_or(c, {PulseShape::gaussian, PulseShape::sinsq, PulseShape::cubic});
  std::vector<double> areas;
  for (int k = 1; k <= 30; ++k) areas.push_back(5.0 * k);
  std::vector<double> deltas;
  for (int k = -10; k <= 10; ++k) deltas.push_back(kTwoPi * 1e6 * k);
  const bool by_delta = c.config && c.config->sweep == "delta";
  if (by_delta)
    deltas = c.config->values;
  else
    areas = values_or(c, "area", areas);

  write_rows(dir / "stirap_area.csv", run_stirap_sweep(p, shapes, areas, c.threads));
  write_rows(dir / "stirap_detuning.csv", run_stirap_detuning(p, shapes, deltas, detuning_tf, c.threads));
  write_manifest(dir, "stirap", c, {{"preset", preset_json("fig1")}, {"detuning_tf_s", detuning_tf}});
  return 0;
}

int cmd_gates(Common& c, const std::string& gate_name) {
  const auto dir = prepare(c);
  const Gate gate = parse_gate(gate_name);
  GatePreset p = fig3_preset();
  if (c.steps) p.steps = c.steps;
  const auto shapes = shapes_or(c, {PulseShape::gaussian, PulseShape::sinsq, PulseShape::quartic});
  std::vector<double> omegas;
  for (int k = 1; k <= 10; ++k) omegas.push_back(kTwoPi * 10e6 * k);
  omegas = values_or(c, "omega_max", omegas);
  write_rows(dir / ("gates_" + gate_name + ".csv"), run_gate_benchmark(gate, shapes, omegas, p, c.threads));
  write_manifest(dir, "gates", c, {{"gate", gate_name}, {"preset", preset_json("fig3")}});
  return 0;
}

int cmd_optimize(Common& c, std::vector<double> lambda3, const std::string& guess) {
  const auto dir = prepare(c);
  OptimizePreset p = fig1_optimize_preset();
  if (c.steps) p.steps = c.steps;
  if (!guess.empty()) p.guess = parse_pulse_shape(guess);
  if (lambda3.empty()) lambda3 = values_or(c, "lambda3", {p.weights.lambda3});
  const auto runs = run_lambda3_sweep(p, lambda3, c.threads);
  json all = json::array();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    all.push_back(to_json(runs[k]));
    for (const auto& pulse : runs[k].pulses) {
      const auto path = dir / ("optimized_l3_" + std::to_string(k) + "_" + pulse.label() + ".csv");
      write_pulse_csv_file(path.string(), pulse);
    }
    std::cout << "lambda3 = " << lambda3[k] << ": F = " << runs[k].report.final_fidelity
              << ", iterations = " << runs[k].report.iterations << ", area = " << runs[k].report.pulse_area << '\n';
  }
  std::ofstream(dir / "optimize.json") << all.dump(2) << '\n';
  write_manifest(dir, "optimize", c, {{"preset", preset_json("fig1_optimize")}, {"lambda3", lambda3}});
  return 0;
}

int cmd_table1(Common& c) {
  const auto dir = prepare(c);
  CzPreset p = table1_preset();
  if (c.steps) p.steps = c.steps;
  const auto shapes = shapes_or(c, {PulseShape::quartic, PulseShape::gaussian});
  const auto perturbations = table1_perturbations();
  std::vector<Table1Result> results;
  for (auto s : shapes) {
    results.push_back(run_table1(s, p, perturbations, c.threads));
    std::cout << to_string(s) << ": tf = " << results.back().tf * 1e6 << " us, F = " << results.back().nominal_fidelity
              << '\n';
  }
  write_rows(dir / "table1.csv", results);
  write_manifest(dir, "table1", c, {{"preset", preset_json("table1")}});
  return 0;
}

int cmd_montecarlo(Common& c, std::size_t samples, const std::string& noise) {
  const auto dir = prepare(c);
  const std::string preset = c.config && c.config->noise != "none" ? c.config->noise : noise;
  MonteCarloPreset p = preset == "doppler" ? doppler_preset() : fig2_preset();
  if (preset != "fig2" && preset != "doppler") throw ConfigError("montecarlo: noise preset must be fig2 or doppler");
  if (c.steps) p.base.steps = c.steps;
  const auto shapes = shapes_or(c, {PulseShape::quartic, PulseShape::gaussian});
  const auto res = run_fig2_montecarlo(shapes, samples, c.seed, p, c.threads);
  write_rows(dir / "montecarlo.csv", res);
  for (const auto& r : res)
    std::cout << to_string(r.shape) << ": mean infidelity " << r.mean_infidelity << " (" << r.failures
              << " failed samples)\n";
  write_manifest(dir, "montecarlo", c, {{"preset", preset_json(preset)}, {"samples", samples}});
  return 0;
}

int cmd_tomography(Common& c, const std::string& gate_name, const std::string& shape_name, double omega) {
  const auto dir = prepare(c);
  const Gate gate = parse_gate(gate_name);
  const PulseShape shape = parse_pulse_shape(shape_name);
  GatePreset g = fig3_preset();
  ProcessMatrix chi;
  double fidelity = 0.0, tf = 0.0;
  std::size_t n_kraus = 0;
  if (gate == Gate::cz) {
    CzPreset p = table1_preset();
    if (c.steps) p.steps = c.steps;
    if (omega <= 0.0) omega = p.omega_max;
    tf = calibrate_cz_duration(p.cz, shape, omega, p.bracket, p.steps).tf;
    const TimeGrid grid(0.0, tf, p.steps + 1);
    const PulsePair pp = cz_pulses(shape, omega, grid);
    std::vector<int> lv;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) lv.push_back(cz_index(cz_level(a), cz_level(b)));
    const auto rep = characterize_gate(embedded_channel(build_cz(p.cz, pp.first, pp.second), grid, lv), 2,
                                       cz_unitary(), resolve_threads(c.threads));
    chi = rep.process;
    fidelity = rep.fidelity;
    n_kraus = rep.kraus.size();
  } else {
    if (c.steps) g.steps = c.steps;
    if (omega <= 0.0) omega = kTwoPi * 50e6;
    tf = g.tf;
    const TimeGrid grid(0.0, tf, g.steps + 1);
    QubitChannel ch;
    ComplexMatrix target;
    if (gate == Gate::phase) {
      const PulsePair pp = gate_pair(shape, omega, grid, true);
      ch = embedded_channel(build_phase_gate(pp.first, pp.second, g.gamma), grid, {0, 1});
      target = pauli_z();
    } else {
      const HadamardPulses hp = hadamard_pulses(shape, omega, grid);
      ch = embedded_channel(build_hadamard_gate(hp.omega0, hp.omega1, hp.omega2, g.gamma), grid, {0, 1});
      target = hadamard_unitary();
    }
    const auto rep = characterize_gate(ch, 1, target, resolve_threads(c.threads));
    chi = rep.process;
    fidelity = rep.fidelity;
    n_kraus = rep.kraus.size();
  }
  std::ofstream(dir / "chi_real.csv") << [&] {
    std::ostringstream s;
    write_chi_csv(s, chi, false);
    return s.str();
  }();
  std::ofstream(dir / "chi_imag.csv") << [&] {
    std::ostringstream s;
    write_chi_csv(s, chi, true);
    return s.str();
  }();
  json j = to_json(chi);
  j["gate"] = gate_name;
  j["shape"] = shape_name;
  j["omega_max_rad_per_s"] = omega;
  j["tf_s"] = tf;
  j["average_gate_fidelity"] = fidelity;
  j["kraus_operators"] = n_kraus;
  std::ofstream(dir / "process.json") << j.dump(2) << '\n';
  write_manifest(dir, "tomography", c, {{"gate", gate_name}, {"shape", shape_name}, {"omega_max_rad_per_s", omega}});
  std::cout << gate_name << " (" << shape_name << "): F = " << fidelity << ", " << n_kraus << " Kraus operators\n";
  return 0;
}

int cmd_presets(Common& c) {
  const auto dir = prepare(c);
  for (const auto& name : preset_names()) {
    std::ofstream(dir / (name + ".json")) << preset_json(name).dump(2) << '\n';
    std::cout << "wrote " << (dir / (name + ".json")).string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"igates: inertial STIRAP pulses, geometric gates and constrained optimal control"};
  app.require_subcommand(1);
  Common c;

  auto* analyze = app.add_subcommand("analyze", "Inertiality report for a pulse pair");
  std::string shape = "cubic", pulse1, pulse2;
  double tf = 1e-6, omega = kTwoPi * 50e6;
  analyze->add_option("--shape", shape, "gaussian | sinsq | cubic | quartic");
  analyze->add_option("--tf", tf, "Duration in seconds");
  analyze->add_option("--omega", omega, "Peak Rabi frequency in rad/s");
  analyze->add_option("--pulse1", pulse1, "Pump pulse CSV")->check(CLI::ExistingFile);
  analyze->add_option("--pulse2", pulse2, "Stokes pulse CSV")->check(CLI::ExistingFile);
  add_common(analyze, c);

  auto* stirap = app.add_subcommand("stirap", "STIRAP infidelity versus pulse area and detuning");
  double detuning_tf = 0.25e-6;
  stirap->add_option("--detuning-tf", detuning_tf, "Duration for the detuning scan, seconds");
  add_common(stirap, c);

  auto* gates = app.add_subcommand("gates", "Gate infidelity versus peak Rabi frequency");
  std::string gate = "phase";
  gates->add_option("--gate", gate, "phase | hadamard | cz");
  add_common(gates, c);

  auto* opt = app.add_subcommand("optimize", "Constrained Krotov optimization of the transfer");
  std::vector<double> lambda3;
  std::string guess;
  opt->add_option("--lambda3", lambda3, "Acceleration weights (one run each)");
  opt->add_option("--guess", guess, "Guess shape (cubic, sinsq, gaussian)");
  add_common(opt, c);

  auto* table1 = app.add_subcommand("table1", "CZ robustness scan");
  add_common(table1, c);

  auto* mc = app.add_subcommand("montecarlo", "CZ Monte Carlo noise ensemble");
  std::size_t samples = 100;
  std::string noise = "fig2";
  mc->add_option("--samples", samples, "Realizations per shape");
  mc->add_option("--noise", noise, "fig2 | doppler");
  add_common(mc, c);

  auto* tomo = app.add_subcommand("tomography", "Process matrix and fidelity of one gate");
  std::string tomo_gate = "cz", tomo_shape = "quartic";
  double tomo_omega = 0.0;
  tomo->add_option("--gate", tomo_gate, "phase | hadamard | cz");
  tomo->add_option("--shape", tomo_shape, "Pulse shape");
  tomo->add_option("--omega", tomo_omega, "Peak Rabi frequency in rad/s (0 = preset)");
  add_common(tomo, c);

  auto* presets = app.add_subcommand("presets", "Write every named preset as JSON");
  add_common(presets, c);

  CLI11_PARSE(app, argc, argv);
  set_log_level(c.verbose ? LogLevel::debug : LogLevel::warn);
  try {
    load_config(c);
    if (*analyze) return cmd_analyze(c, shape, tf, omega, pulse1, pulse2);
    if (*stirap) return cmd_stirap(c, detuning_tf);
    if (*gates) return cmd_gates(c, gate);
    if (*opt) return cmd_optimize(c, lambda3, guess);
    if (*table1) return cmd_table1(c);
    if (*mc) return cmd_montecarlo(c, samples, noise);
    if (*tomo) return cmd_tomography(c, tomo_gate, tomo_shape, tomo_omega);
    if (*presets) return cmd_presets(c);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
