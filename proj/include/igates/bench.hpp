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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "igates/krotov.hpp"
#include "igates/pulses.hpp"
#include "igates/systems.hpp"

namespace igates {

// ---------------------------------------------------------------------------
// STIRAP benchmark

struct StirapPreset {
  StirapParams params;
  double omega_max = 0.0;  // rad/s
  std::size_t steps = 2000;
};

StirapPreset fig1_preset();

/// 1 - population of the target level after one transfer of duration tf.
double stirap_infidelity(const StirapPreset& p, PulseShape shape, double tf);

struct StirapRow {
  PulseShape shape = PulseShape::cubic;
  double area = 0.0;  // omega_max * tf
  double tf = 0.0;
  double infidelity = 1.0;
  std::string error;
};

std::vector<StirapRow> run_stirap_sweep(const StirapPreset& p, std::span<const PulseShape> shapes,
                                        std::span<const double> areas, int threads = 1);

struct DetuningRow {
  PulseShape shape = PulseShape::cubic;
  double delta = 0.0;  // rad/s
  double infidelity = 1.0;
  std::string error;
};

std::vector<DetuningRow> run_stirap_detuning(const StirapPreset& p, std::span<const PulseShape> shapes,
                                             std::span<const double> deltas, double tf, int threads = 1);

void write_csv(std::ostream& out, const std::vector<StirapRow>& rows);
void write_csv(std::ostream& out, const std::vector<DetuningRow>& rows);

// ---------------------------------------------------------------------------
// Gate benchmark

enum class Gate { phase, hadamard, cz };

std::string to_string(Gate g);
Gate parse_gate(std::string_view name);

struct GatePreset {
  double gamma = 0.0;  // tripod decay, rad/s
  double tf = 0.0;     // single-qubit gate duration, s
  std::size_t steps = 4000;
  CzParams cz;
  std::pair<double, double> cz_bracket;  // calibration window for the CZ duration, s
};

GatePreset fig3_preset();

struct GateRow {
  Gate gate = Gate::phase;
  PulseShape shape = PulseShape::quartic;
  double omega_max = 0.0;
  double tf = 0.0;
  double fidelity = 0.0;
  std::string error;
};

/// Full pipeline for one point: pulses, system, tomography, Kraus operators, average fidelity.
GateRow gate_point(Gate gate, PulseShape shape, double omega_max, const GatePreset& p, int threads = 1);

std::vector<GateRow> run_gate_benchmark(Gate gate, std::span<const PulseShape> shapes,
                                        std::span<const double> omega_values, const GatePreset& p, int threads = 1);

void write_csv(std::ostream& out, const std::vector<GateRow>& rows);

// ---------------------------------------------------------------------------
// CZ robustness scan and Monte Carlo ensembles

struct CzPreset {
  CzParams cz;
  double omega_max = 0.0;
  std::pair<double, double> bracket;
  std::size_t steps = 4000;
};

CzPreset table1_preset();

/// Average CZ gate fidelity at a fixed duration.
double cz_fidelity(const CzParams& p, PulseShape shape, double omega_max, double tf, std::size_t steps,
                   const NoiseSample& sample = NoiseSample::ideal(), const NoiseModel& model = {}, int threads = 1);

struct Perturbation {
  std::string parameter;  // delta | omega | gamma_p | gamma_r | gamma_dep | position
  double minus = 0.0;     // fractional change, applied as (1 - minus)
  double plus = 0.0;      // applied as (1 + plus)
};

/// Delta, Omega and the three rates at +-20 %, the atom separation at +-2 %.
std::vector<Perturbation> table1_perturbations();

struct RobustnessRow {
  std::string parameter;
  double delta_minus = 0.0;
  double delta_plus = 0.0;
  double fidelity_minus = 0.0;
  double fidelity_plus = 0.0;
  double change_minus = 0.0;  // percentage points relative to nominal
  double change_plus = 0.0;
  double f_min_change = 0.0;
  double f_max_change = 0.0;
  std::string error;
};

struct Table1Result {
  PulseShape shape = PulseShape::quartic;
  double tf = 0.0;
  double nominal_fidelity = 0.0;
  std::vector<RobustnessRow> rows;
};

/// Calibrates tf at the nominal point, then reruns the gate at each perturbed value with tf held fixed.
Table1Result run_table1(PulseShape shape, const CzPreset& p, std::span<const Perturbation> perturbations,
                        int threads = 1);

void write_csv(std::ostream& out, const std::vector<Table1Result>& results);

struct MonteCarloPreset {
  CzPreset base;
  NoiseModel noise;
};

/// Amplitude, position and detuning noise on the CZ operating point.
MonteCarloPreset fig2_preset();
/// Same with the thermal Doppler spread of 2 pi x 43 kHz in place of the static detuning spread.
MonteCarloPreset doppler_preset();

struct Realization {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double infidelity = 1.0;
  std::string error;
};

struct MonteCarloResult {
  PulseShape shape = PulseShape::quartic;
  double tf = 0.0;
  double nominal_infidelity = 0.0;
  std::vector<Realization> samples;
  double mean_infidelity = 0.0;  // over successful samples
  std::size_t failures = 0;
};

/// Sample i of every shape uses seed + i, so shapes see the same noise draws.
std::vector<MonteCarloResult> run_fig2_montecarlo(std::span<const PulseShape> shapes, std::size_t n_samples,
                                                  std::uint64_t seed, const MonteCarloPreset& p, int threads = 1);

void write_csv(std::ostream& out, const std::vector<MonteCarloResult>& results);

// ---------------------------------------------------------------------------
// Constrained optimization of the STIRAP transfer

struct OptimizePreset {
  StirapPreset stirap;
  double tf = 0.0;
  std::size_t steps = 400;
  PulseShape guess = PulseShape::cubic;
  CostWeights weights;
  KrotovOptions options;
};

OptimizePreset fig1_optimize_preset();

struct OptimizeRun {
  std::vector<ControlPulse> pulses;  // SI units
  KrotovReport report;
  double guess_fidelity = 0.0;
  double relative_area = 0.0;  // optimized area over the guess area
};

/// Optimizes in units where omega_max = 1 (time in 1/omega_max) and converts the result back to SI.
OptimizeRun run_stirap_optimization(const OptimizePreset& p);

std::vector<OptimizeRun> run_lambda3_sweep(const OptimizePreset& p, std::span<const double> lambda3, int threads = 1);

nlohmann::json to_json(const OptimizeRun& r);

// ---------------------------------------------------------------------------
// Presets and manifests

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
nlohmann::json preset_json(std::string_view name);

/// FNV-1a over the compact JSON dump.
std::string config_hash(const nlohmann::json& config);

nlohmann::json make_manifest(std::string_view command, const nlohmann::json& config, std::uint64_t seed,
                             std::size_t steps, int threads);

struct ExperimentConfig {
  std::string preset;
  std::vector<PulseShape> shapes;
  std::string sweep;  // omega_max | tf | area | delta | lambda3 | noise_seed
  std::vector<double> values;  // rad/s for omega_max and delta sweeps
  bool times_2pi = false;      // frequency values were given in Hz
  std::string noise = "none";
  std::string output = "out";
  nlohmann::json raw;
};

/// Validates names and values; throws ConfigError.
ExperimentConfig parse_experiment(const nlohmann::json& j);

}  // namespace igates
