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

#include "igates/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>

#include <Eigen/Core>

#include "igates/errors.hpp"
#include "igates/log.hpp"
#include "igates/parallel.hpp"
#include "igates/tomography.hpp"

#ifndef IGATES_VERSION
#define IGATES_VERSION "0.1.0"
#endif

namespace igates {

namespace {

constexpr double kMHz = kTwoPi * 1e6;
constexpr double kKHz = kTwoPi * 1e3;

std::vector<int> cz_levels() {
  std::vector<int> lv;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) lv.push_back(cz_index(cz_level(a), cz_level(b)));
  return lv;
}

void full_precision(std::ostream& out) { out << std::setprecision(std::numeric_limits<double>::max_digits10); }

// CSV cells never contain commas or quotes from our own messages, but error text can.
std::string cell(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

template <class Row, class F>
void guarded(Row& row, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    row.error = e.what();
    log_warn(std::string("row failed: ") + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

StirapPreset fig1_preset() {
  StirapPreset p;
  p.params = {0.0, 3.0 * kMHz, 3.0 * kMHz};
  p.omega_max = 50.0 * kMHz;
  p.steps = 2000;
  return p;
}

double stirap_infidelity(const StirapPreset& p, PulseShape shape, double tf) {
  if (tf < 0.0) throw PreconditionError("stirap_infidelity: negative duration");
  if (tf == 0.0) return 1.0;  // nothing moves out of the initial level
  const TimeGrid grid(0.0, tf, p.steps + 1);
  const PulsePair pair = stirap_pair(shape, p.omega_max, grid);
  const auto gen = build_stirap3(p.params, pair.first, pair.second);
  const DensityMatrix rho = propagate_final(gen, DensityMatrix::basis(3, 0), grid);
  return 1.0 - rho.population(2);
}

std::vector<StirapRow> run_stirap_sweep(const StirapPreset& p, std::span<const PulseShape> shapes,
                                        std::span<const double> areas, int threads) {
  if (!(p.omega_max > 0.0)) throw ConfigError("STIRAP sweep: omega_max must be positive");
  std::vector<StirapRow> rows(shapes.size() * areas.size());
  parallel_for(rows.size(), resolve_threads(threads), [&](std::size_t k) {
    StirapRow& r = rows[k];
    r.shape = shapes[k / areas.size()];
    r.area = areas[k % areas.size()];
    r.tf = r.area / p.omega_max;
    guarded(r, [&] { r.infidelity = stirap_infidelity(p, r.shape, r.tf); });
  });
  return rows;
}

std::vector<DetuningRow> run_stirap_detuning(const StirapPreset& p, std::span<const PulseShape> shapes,
                                             std::span<const double> deltas, double tf, int threads) {
  std::vector<DetuningRow> rows(shapes.size() * deltas.size());
  parallel_for(rows.size(), resolve_threads(threads), [&](std::size_t k) {
    DetuningRow& r = rows[k];
    r.shape = shapes[k / deltas.size()];
    r.delta = deltas[k % deltas.size()];
    StirapPreset q = p;
    q.params.delta = r.delta;
    guarded(r, [&] { r.infidelity = stirap_infidelity(q, r.shape, tf); });
  });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<StirapRow>& rows) {
  full_precision(out);
  out << "shape,area,tf_seconds,infidelity,error\n";
  for (const auto& r : rows)
    out << to_string(r.shape) << ',' << r.area << ',' << r.tf << ',' << r.infidelity << ',' << cell(r.error) << '\n';
}

void write_csv(std::ostream& out, const std::vector<DetuningRow>& rows) {
  full_precision(out);
  out << "shape,delta_rad_per_s,infidelity,error\n";
  for (const auto& r : rows)
    out << to_string(r.shape) << ',' << r.delta << ',' << r.infidelity << ',' << cell(r.error) << '\n';
}

// ---------------------------------------------------------------------------

std::string to_string(Gate g) {
  switch (g) {
    case Gate::phase:
      return "phase";
    case Gate::hadamard:
      return "hadamard";
    case Gate::cz:
      return "cz";
  }
  return "?";
}

Gate parse_gate(std::string_view name) {
  if (name == "phase") return Gate::phase;
  if (name == "hadamard") return Gate::hadamard;
  if (name == "cz") return Gate::cz;
  throw ConfigError("unknown gate '" + std::string(name) + "' (phase, hadamard, cz)");
}

GatePreset fig3_preset() {
  GatePreset p;
  p.gamma = 6.0 * kMHz;
  p.tf = 0.5e-6;
  p.steps = 4000;
  p.cz.delta = 50.0 * kMHz;
  p.cz.vr = 14.0 * kMHz;
  p.cz.gamma_p = 6.0 * kMHz;
  p.cz.gamma_r = 1.0 * kKHz;
  p.cz.gamma_dep = 10.0 * kKHz;
  p.cz_bracket = {0.3e-6, 0.7e-6};
  return p;
}

double cz_fidelity(const CzParams& p, PulseShape shape, double omega_max, double tf, std::size_t steps,
                   const NoiseSample& sample, const NoiseModel& model, int threads) {
  const TimeGrid grid(0.0, tf, steps + 1);
  const PulsePair pulses = cz_pulses(shape, omega_max, grid);
  auto channel = embedded_channel(build_cz(p, pulses.first, pulses.second, sample, model), grid, cz_levels());
  return characterize_gate(channel, 2, cz_unitary(), threads).fidelity;
}

GateRow gate_point(Gate gate, PulseShape shape, double omega_max, const GatePreset& p, int threads) {
  GateRow r;
  r.gate = gate;
  r.shape = shape;
  r.omega_max = omega_max;
  guarded(r, [&] {
    switch (gate) {
      case Gate::phase: {
        r.tf = p.tf;
        const TimeGrid grid(0.0, p.tf, p.steps + 1);
        const PulsePair pair = gate_pair(shape, omega_max, grid, true);
        auto ch = embedded_channel(build_phase_gate(pair.first, pair.second, p.gamma), grid, {0, 1});
        r.fidelity = characterize_gate(ch, 1, pauli_z(), threads).fidelity;
        break;
      }
      case Gate::hadamard: {
        r.tf = p.tf;
        const TimeGrid grid(0.0, p.tf, p.steps + 1);
        const HadamardPulses hp = hadamard_pulses(shape, omega_max, grid);
        auto ch = embedded_channel(build_hadamard_gate(hp.omega0, hp.omega1, hp.omega2, p.gamma), grid, {0, 1});
        r.fidelity = characterize_gate(ch, 1, hadamard_unitary(), threads).fidelity;
        break;
      }
      case Gate::cz: {
        r.tf = calibrate_cz_duration(p.cz, shape, omega_max, p.cz_bracket, p.steps).tf;
        r.fidelity = cz_fidelity(p.cz, shape, omega_max, r.tf, p.steps, NoiseSample::ideal(), {}, threads);
        break;
      }
    }
  });
  return r;
}

std::vector<GateRow> run_gate_benchmark(Gate gate, std::span<const PulseShape> shapes,
                                        std::span<const double> omega_values, const GatePreset& p, int threads) {
  std::vector<GateRow> rows(shapes.size() * omega_values.size());
  parallel_for(rows.size(), resolve_threads(threads), [&](std::size_t k) {
    rows[k] = gate_point(gate, shapes[k / omega_values.size()], omega_values[k % omega_values.size()], p);
  });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<GateRow>& rows) {
  full_precision(out);
  out << "gate,shape,omega_max_rad_per_s,tf_seconds,fidelity,infidelity,error\n";
  for (const auto& r : rows)
    out << to_string(r.gate) << ',' << to_string(r.shape) << ',' << r.omega_max << ',' << r.tf << ',' << r.fidelity
        << ',' << (r.error.empty() ? 1.0 - r.fidelity : 1.0) << ',' << cell(r.error) << '\n';
}

// ---------------------------------------------------------------------------

CzPreset table1_preset() {
  CzPreset p;
  p.omega_max = 100.0 * kMHz;
  p.cz.delta = 100.0 * kMHz;
  p.cz.c6 = kTwoPi * 14e12 * 1e-36;  // 14 THz um^6
  p.cz.separation = 10e-6;
  p.cz.gamma_p = 6.0 * kMHz;
  p.cz.gamma_r = 1.0 * kKHz;
  p.cz.gamma_dep = 10.0 * kKHz;
  p.bracket = {0.45e-6, 0.6e-6};
  p.steps = 4000;
  return p;
}

std::vector<Perturbation> table1_perturbations() {
  return {{"delta", 0.2, 0.2},   {"omega", 0.2, 0.2},     {"gamma_p", 0.2, 0.2},
          {"gamma_r", 0.2, 0.2}, {"gamma_dep", 0.2, 0.2}, {"position", 0.02, 0.02}};
}

namespace {

std::pair<CzParams, double> perturbed(const CzPreset& p, const std::string& name, double factor) {
  CzParams q = p.cz;
  double omega = p.omega_max;
  if (name == "delta") {
    q.delta *= factor;
  } else if (name == "omega") {
    omega *= factor;
  } else if (name == "gamma_p") {
    q.gamma_p *= factor;
  } else if (name == "gamma_r") {
    q.gamma_r *= factor;
  } else if (name == "gamma_dep") {
    q.gamma_dep *= factor;
  } else if (name == "position") {
    if (q.c6 > 0.0) {
      q.separation *= factor;
      q.vr = 0.0;
    } else {
      q.vr /= std::pow(factor, 6);
    }
  } else {
    throw ConfigError("unknown robustness parameter '" + name + "'");
  }
  return {q, omega};
}

}  // namespace

Table1Result run_table1(PulseShape shape, const CzPreset& p, std::span<const Perturbation> perturbations,
                        int threads) {
  p.cz.check();
  Table1Result res;
  res.shape = shape;
  res.tf = calibrate_cz_duration(p.cz, shape, p.omega_max, p.bracket, p.steps).tf;
  res.nominal_fidelity = cz_fidelity(p.cz, shape, p.omega_max, res.tf, p.steps);
  log_info("table1 " + to_string(shape) + ": tf = " + std::to_string(res.tf * 1e6) +
           " us, F = " + std::to_string(res.nominal_fidelity));

  res.rows.resize(perturbations.size());
  std::vector<double> fid(2 * perturbations.size(), 0.0);
  std::vector<std::string> err(2 * perturbations.size());
  parallel_for(fid.size(), resolve_threads(threads), [&](std::size_t k) {
    const Perturbation& pt = perturbations[k / 2];
    const double factor = k % 2 == 0 ? 1.0 - pt.minus : 1.0 + pt.plus;
    try {
      const auto [q, omega] = perturbed(p, pt.parameter, factor);
      fid[k] = cz_fidelity(q, shape, omega, res.tf, p.steps);
    } catch (const std::exception& e) {
      err[k] = e.what();
    }
  });
  for (std::size_t i = 0; i < perturbations.size(); ++i) {
    RobustnessRow& r = res.rows[i];
    r.parameter = perturbations[i].parameter;
    r.delta_minus = -perturbations[i].minus;
    r.delta_plus = perturbations[i].plus;
    r.error = !err[2 * i].empty() ? err[2 * i] : err[2 * i + 1];
    if (!r.error.empty()) continue;
    r.fidelity_minus = fid[2 * i];
    r.fidelity_plus = fid[2 * i + 1];
    r.change_minus = 100.0 * (r.fidelity_minus - res.nominal_fidelity);
    r.change_plus = 100.0 * (r.fidelity_plus - res.nominal_fidelity);
    r.f_min_change = std::min(r.change_minus, r.change_plus);
    r.f_max_change = std::max(r.change_minus, r.change_plus);
  }
  return res;
}

void write_csv(std::ostream& out, const std::vector<Table1Result>& results) {
  full_precision(out);
  out << "shape,tf_seconds,nominal_fidelity,parameter,delta_minus,delta_plus,fidelity_minus,fidelity_plus,"
         "change_minus_pp,change_plus_pp,f_min_change_pp,f_max_change_pp,error\n";
  for (const auto& res : results)
    for (const auto& r : res.rows)
      out << to_string(res.shape) << ',' << res.tf << ',' << res.nominal_fidelity << ',' << r.parameter << ','
          << r.delta_minus << ',' << r.delta_plus << ',' << r.fidelity_minus << ',' << r.fidelity_plus << ','
          << r.change_minus << ',' << r.change_plus << ',' << r.f_min_change << ',' << r.f_max_change << ','
          << cell(r.error) << '\n';
}

MonteCarloPreset fig2_preset() {
  MonteCarloPreset p;
  p.base = table1_preset();
  p.noise.sigma_delta = 14.0 * kKHz;
  p.noise.sigma_omega = 2.5 * kMHz;
  p.noise.omega_ref = p.base.omega_max;
  p.noise.sigma_dz = 0.2e-6;
  p.noise.sigma_dxy = 0.07e-6;
  p.noise.waist = 1e-6;
  return p;
}

MonteCarloPreset doppler_preset() {
  MonteCarloPreset p = fig2_preset();
  p.noise.sigma_delta = 43.0 * kKHz;
  return p;
}

std::vector<MonteCarloResult> run_fig2_montecarlo(std::span<const PulseShape> shapes, std::size_t n_samples,
                                                  std::uint64_t seed, const MonteCarloPreset& p, int threads) {
  if (n_samples == 0) throw ConfigError("montecarlo: need at least one sample");
  p.base.cz.check();
  std::vector<MonteCarloResult> out(shapes.size());
  const int workers = resolve_threads(threads);
  parallel_for(shapes.size(), workers, [&](std::size_t s) {
    MonteCarloResult& r = out[s];
    r.shape = shapes[s];
    r.tf = calibrate_cz_duration(p.base.cz, r.shape, p.base.omega_max, p.base.bracket, p.base.steps).tf;
    r.nominal_infidelity = 1.0 - cz_fidelity(p.base.cz, r.shape, p.base.omega_max, r.tf, p.base.steps);
    r.samples.resize(n_samples);
  });

  parallel_for(shapes.size() * n_samples, workers, [&](std::size_t k) {
    MonteCarloResult& r = out[k / n_samples];
    Realization& z = r.samples[k % n_samples];
    z.index = k % n_samples;
    z.seed = seed + z.index;
    try {
      const NoiseSample ns = sample_noise(p.noise, z.seed);
      z.infidelity = 1.0 - cz_fidelity(p.base.cz, r.shape, p.base.omega_max, r.tf, p.base.steps, ns, p.noise);
    } catch (const std::exception& e) {
      z.error = e.what();
      log_warn("montecarlo sample " + std::to_string(z.index) + " skipped: " + e.what());
    }
  });

  for (auto& r : out) {
    double sum = 0.0;
    std::size_t ok = 0;
    for (const auto& z : r.samples) {
      if (!z.error.empty()) continue;
      sum += z.infidelity;
      ++ok;
    }
    r.failures = r.samples.size() - ok;
    r.mean_infidelity = ok > 0 ? sum / static_cast<double>(ok) : 1.0;
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<MonteCarloResult>& results) {
  full_precision(out);
  out << "shape,tf_seconds,sample,seed,infidelity,error\n";
  for (const auto& r : results) {
    out << to_string(r.shape) << ',' << r.tf << ",nominal,," << r.nominal_infidelity << ",\n";
    for (const auto& z : r.samples)
      out << to_string(r.shape) << ',' << r.tf << ',' << z.index << ',' << z.seed << ','
          << (z.error.empty() ? z.infidelity : 1.0) << ',' << cell(z.error) << '\n';
    out << to_string(r.shape) << ',' << r.tf << ",mean,," << r.mean_infidelity << ",\n";
  }
}

// ---------------------------------------------------------------------------

OptimizePreset fig1_optimize_preset() {
  OptimizePreset p;
  p.stirap = fig1_preset();
  p.tf = 0.1e-6;
  p.steps = 400;
  p.guess = PulseShape::cubic;
  p.weights = {0.1, 0.0, 1e-7};
  p.options.max_iter = 200;
  p.options.fidelity_goal = 0.99;
  return p;
}

OptimizeRun run_stirap_optimization(const OptimizePreset& p) {
  const double om = p.stirap.omega_max;
  if (!(om > 0.0) || !(p.tf > 0.0)) throw ConfigError("optimize: omega_max and tf must be positive");
  // Dimensionless units: omega_max = 1, time in 1/omega_max.
  const TimeGrid grid(0.0, om * p.tf, p.steps + 1);
  const StirapParams q{p.stirap.params.delta / om, p.stirap.params.gamma_31 / om, p.stirap.params.gamma_32 / om};
  const ControlModel model = stirap3_model(q);
  const PulsePair guess = stirap_pair(p.guess, 1.0, grid);
  const double guess_area = std::max(guess.first.peak(), guess.second.peak()) * grid.duration();

  OptimizeResult res = optimize({guess.first, guess.second}, model, DensityMatrix::basis(3, 0),
                                DensityMatrix::basis(3, 2), p.weights, p.options);
  OptimizeRun run;
  run.report = res.report;
  run.guess_fidelity = res.report.fidelity_history.front();
  run.relative_area = res.report.pulse_area / guess_area;
  const TimeGrid si(0.0, p.tf, p.steps + 1);
  const char* labels[] = {"omega1", "omega2"};
  for (std::size_t j = 0; j < res.pulses.size(); ++j) {
    std::vector<Complex> s(res.pulses[j].samples().begin(), res.pulses[j].samples().end());
    for (auto& v : s) v *= om;
    run.pulses.emplace_back(si, std::move(s), labels[j]);
  }
  return run;
}

std::vector<OptimizeRun> run_lambda3_sweep(const OptimizePreset& p, std::span<const double> lambda3, int threads) {
  std::vector<OptimizeRun> out(lambda3.size());
  parallel_for(lambda3.size(), resolve_threads(threads), [&](std::size_t k) {
    OptimizePreset q = p;
    q.weights.lambda3 = lambda3[k];
    out[k] = run_stirap_optimization(q);
  });
  return out;
}

nlohmann::json to_json(const OptimizeRun& r) {
  nlohmann::json j = to_json(r.report);
  j["guess_fidelity"] = r.guess_fidelity;
  j["relative_area"] = r.relative_area;
  return j;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json cz_json(const CzParams& p) {
  return {{"delta_rad_per_s", p.delta},     {"vr_rad_per_s", p.vr},           {"c6_rad_per_s_m6", p.c6},
          {"separation_m", p.separation},    {"gamma_p_rad_per_s", p.gamma_p}, {"gamma_r_rad_per_s", p.gamma_r},
          {"gamma_dep_rad_per_s", p.gamma_dep}};
}

nlohmann::json noise_json(const NoiseModel& n) {
  return {{"sigma_delta_rad_per_s", n.sigma_delta}, {"sigma_omega_rad_per_s", n.sigma_omega},
          {"omega_ref_rad_per_s", n.omega_ref},     {"sigma_dz_m", n.sigma_dz},
          {"sigma_dxy_m", n.sigma_dxy},             {"waist_m", n.waist},
          {"k1_rad_per_m", n.k1},                   {"k2_rad_per_m", n.k2},
          {"sigma_v_m_per_s", n.sigma_v}};
}

nlohmann::json cz_preset_json(const CzPreset& p) {
  return {{"cz", cz_json(p.cz)},
          {"omega_max_rad_per_s", p.omega_max},
          {"bracket_s", {p.bracket.first, p.bracket.second}},
          {"steps", p.steps}};
}

nlohmann::json stirap_json(const StirapPreset& p) {
  return {{"delta_rad_per_s", p.params.delta},
          {"gamma_31_rad_per_s", p.params.gamma_31},
          {"gamma_32_rad_per_s", p.params.gamma_32},
          {"omega_max_rad_per_s", p.omega_max},
          {"steps", p.steps}};
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig1_optimize", "fig3", "table1", "fig2", "doppler"}; }

nlohmann::json preset_json(std::string_view name) {
  if (name == "fig1") {
    auto j = stirap_json(fig1_preset());
    j["shapes"] = {"gaussian", "sinsq", "cubic"};
    j["detuning_sweep_tf_s"] = 0.25e-6;
    j["detuning_sweep_range_rad_per_s"] = {-10.0 * kMHz, 10.0 * kMHz};
    return j;
  }
  if (name == "fig1_optimize") {
    const auto p = fig1_optimize_preset();
    return {{"stirap", stirap_json(p.stirap)},
            {"tf_s", p.tf},
            {"steps", p.steps},
            {"guess", to_string(p.guess)},
            {"lambda1", p.weights.lambda1},
            {"lambda2", p.weights.lambda2},
            {"lambda3", p.weights.lambda3},
            {"lambda3_sweep", {0.0, 1.6e-7, 1.1e-6}},
            {"time_unit", "1/omega_max"},
            {"max_iter", p.options.max_iter},
            {"fidelity_goal", p.options.fidelity_goal}};
  }
  if (name == "fig3") {
    const auto p = fig3_preset();
    return {{"gamma_rad_per_s", p.gamma},
            {"tf_s", p.tf},
            {"steps", p.steps},
            {"cz", cz_json(p.cz)},
            {"cz_bracket_s", {p.cz_bracket.first, p.cz_bracket.second}},
            {"shapes", {"gaussian", "sinsq", "quartic"}}};
  }
  if (name == "table1") {
    auto j = cz_preset_json(table1_preset());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& pt : table1_perturbations())
      rows.push_back({{"parameter", pt.parameter}, {"minus", pt.minus}, {"plus", pt.plus}});
    j["perturbations"] = rows;
    j["shapes"] = {"quartic", "gaussian"};
    return j;
  }
  if (name == "fig2" || name == "doppler") {
    const auto p = name == "fig2" ? fig2_preset() : doppler_preset();
    return {{"base", cz_preset_json(p.base)}, {"noise", noise_json(p.noise)}, {"samples", 100},
            {"shapes", {"quartic", "gaussian"}}};
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json make_manifest(std::string_view command, const nlohmann::json& config, std::uint64_t seed,
                             std::size_t steps, int threads) {
  return {{"command", command},
          {"config", config},
          {"config_hash", config_hash(config)},
          {"seed", seed},
          {"steps", steps},
          {"threads", threads},
          {"version", IGATES_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"compiler", __VERSION__}};
}

ExperimentConfig parse_experiment(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig c;
  c.raw = j;
  c.preset = j.value("preset", std::string{});
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), c.preset) == names.end())
    throw ConfigError("experiment config: unknown preset '" + c.preset + "'");
  if (j.contains("shapes")) {
    if (!j["shapes"].is_array() || j["shapes"].empty()) throw ConfigError("experiment config: shapes must be a list");
    for (const auto& s : j["shapes"]) {
      try {
        c.shapes.push_back(parse_pulse_shape(s.get<std::string>()));
      } catch (const Error& e) {
        throw ConfigError(std::string("experiment config: ") + e.what());
      } catch (const nlohmann::json::exception&) {
        throw ConfigError("experiment config: shapes must be strings");
      }
    }
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    c.sweep = s.value("variable", std::string{});
    static const std::vector<std::string> vars = {"omega_max", "tf", "area", "delta", "lambda3", "noise_seed"};
    if (std::find(vars.begin(), vars.end(), c.sweep) == vars.end())
      throw ConfigError("experiment config: unknown sweep variable '" + c.sweep + "'");
    if (!s.contains("values") || !s["values"].is_array() || s["values"].empty())
      throw ConfigError("experiment config: sweep values must be a nonempty list");
    for (const auto& v : s["values"]) {
      if (!v.is_number()) throw ConfigError("experiment config: sweep values must be numbers");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw ConfigError("experiment config: sweep values must be finite");
      c.values.push_back(x);
    }
  }
  if (j.contains("times_2pi")) {
    if (!j["times_2pi"].is_boolean()) throw ConfigError("experiment config: times_2pi must be true or false");
    c.times_2pi = j["times_2pi"].get<bool>();
  }
  if (c.times_2pi && (c.sweep == "omega_max" || c.sweep == "delta"))
    for (auto& v : c.values) v *= kTwoPi;
  c.noise = j.value("noise", std::string("none"));
  if (c.noise != "none" && c.noise != "fig2" && c.noise != "doppler")
    throw ConfigError("experiment config: unknown noise preset '" + c.noise + "'");
  c.output = j.value("output", std::string("out"));
  return c;
}

}  // namespace igates
