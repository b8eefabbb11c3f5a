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


// Acceptance suite: one PASS/FAIL line per criterion, exit status = number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "igates/bench.hpp"
#include "igates/errors.hpp"
#include "igates/inertial.hpp"
#include "igates/linops.hpp"
#include "igates/log.hpp"
#include "igates/parallel.hpp"
#include "igates/pulses.hpp"
#include "igates/tomography.hpp"

using namespace igates;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const RobustnessRow& row_of(const Table1Result& r, const std::string& name) {
  for (const auto& row : r.rows)
    if (row.parameter == name) return row;
  throw Error("missing robustness row " + name);
}

// Shared between criteria 1 and 2.
std::vector<Table1Result> g_table1;

Outcome table1_nominal() {
  const CzPreset p = table1_preset();
  std::string detail;
  bool pass = true;
  const struct {
    PulseShape shape;
    double expect;
  } cases[] = {{PulseShape::quartic, 0.963}, {PulseShape::gaussian, 0.948}};
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    double f = 0.0, tf = 0.0;
    try {
      tf = calibrate_cz_duration(p.cz, c.shape, p.omega_max, p.bracket, p.steps).tf;
      f = cz_fidelity(p.cz, c.shape, p.omega_max, tf, p.steps);
    } catch (const Error& e) {
      detail += to_string(c.shape) + " error: " + e.what() + "; ";
      pass = false;
      continue;
    }
    const double secs = seconds_since(t0);
    const bool ok = std::abs(f - c.expect) <= 0.01 && secs < 120.0;
    pass = pass && ok;
    detail += fmt("%s F=%.4f (want %.3f+-0.01) tf=%.4f us %.1f s; ", to_string(c.shape).c_str(), f, c.expect,
                  tf * 1e6, secs);
  }
  return {pass, detail};
}

Outcome table1_robustness() {
  const CzPreset p = table1_preset();
  const auto perts = table1_perturbations();
  g_table1.clear();
  for (auto s : {PulseShape::quartic, PulseShape::gaussian}) g_table1.push_back(run_table1(s, p, perts, 0));
  const auto& q = g_table1[0];
  const auto& g = g_table1[1];
  auto mag = [](const RobustnessRow& r) { return std::max(std::abs(r.f_min_change), std::abs(r.f_max_change)); };
  const auto &qd = row_of(q, "delta"), &gd = row_of(g, "delta"), &qo = row_of(q, "omega"), &go = row_of(g, "omega");
  const bool order = mag(qd) <= 0.15 && mag(gd) > 0.5 && mag(qo) <= 0.3 && mag(go) > 0.7;
  // table entries (F_min, F_max) in percent
  auto within2 = [](double got, double table) { return got * table > 0.0 && std::abs(got) <= 2.0 * std::abs(table) && std::abs(got) >= 0.5 * std::abs(table); };
  const bool size = within2(qd.f_min_change, -0.09) && within2(qd.f_max_change, 0.084) &&
                    within2(gd.f_min_change, -0.839) && within2(gd.f_max_change, 0.64) &&
                    within2(qo.f_min_change, -0.19) && within2(qo.f_max_change, 0.11) &&
                    within2(go.f_min_change, -1.68) && within2(go.f_max_change, 0.8);
  std::string detail = fmt("quartic F0=%.4f delta(%+.3f,%+.3f) omega(%+.3f,%+.3f) pp; gaussian F0=%.4f delta(%+.3f,%+.3f) "
                           "omega(%+.3f,%+.3f) pp; ordering %s, factor-2 magnitudes %s",
                           q.nominal_fidelity, qd.f_min_change, qd.f_max_change, qo.f_min_change, qo.f_max_change,
                           g.nominal_fidelity, gd.f_min_change, gd.f_max_change, go.f_min_change, go.f_max_change,
                           order ? "holds" : "fails", size ? "hold" : "fail");
  return {order && size, detail};
}

Outcome stirap_ordering() {
  const auto p = fig1_preset();
  const std::vector<PulseShape> shapes{PulseShape::gaussian, PulseShape::sinsq, PulseShape::cubic};
  std::vector<double> areas;
  for (int k = 1; k <= 40; ++k) areas.push_back(2.5 * k);
  const auto rows = run_stirap_sweep(p, shapes, areas, 0);
  auto inf = [&](std::size_t s, std::size_t a) { return rows[s * areas.size() + a].infidelity; };
  for (std::size_t a = 0; a < areas.size(); ++a) {
    if (inf(2, a) > 1e-2) continue;
    const bool ok = inf(1, a) > inf(2, a) && inf(0, a) > inf(2, a) && inf(0, a) > inf(1, a);
    return {ok, fmt("first area with cubic <= 1e-2: %.1f; cubic %.4g, sinSQ %.4g, Gaussian %.4g", areas[a], inf(2, a),
                    inf(1, a), inf(0, a))};
  }
  return {false, "cubic never reaches infidelity 1e-2 up to area 100"};
}

Outcome lambda3_trend() {
  const auto p = fig1_optimize_preset();
  const std::vector<double> l3{0.0, 1.6e-7, 1.1e-6};
  const auto runs = run_lambda3_sweep(p, l3, 0);
  bool pass = true;
  std::string detail;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& r = runs[k].report;
    pass = pass && r.final_fidelity >= 0.99;
    if (k > 0) pass = pass && r.pulse_area <= runs[k - 1].report.pulse_area;
    detail += fmt("lambda3=%.2g: F=%.4f area=%.4f iters=%zu; ", l3[k], r.final_fidelity, r.pulse_area, r.iterations);
  }
  return {pass, detail};
}

Outcome krotov_monotone() {
  auto p = fig1_optimize_preset();
  p.options.max_iter = 50;
  p.options.fidelity_goal = 2.0;
  const auto run = run_stirap_optimization(p);
  const auto& j = run.report.j_history;
  bool mono = j.size() == 51;
  std::size_t bad = 0;
  for (std::size_t k = 1; k < j.size(); ++k)
    if (j[k] > j[k - 1]) ++bad;
  mono = mono && bad == 0;
  const bool res = run.report.max_residual < 1e-10;
  return {mono && res, fmt("%zu accepted iterations, %zu increases, J %.6f -> %.6f, max banded residual %.2e",
                           run.report.iterations, bad, j.front(), j.back(), run.report.max_residual)};
}

Outcome tomography_oracles() {
  auto unitary = [](ComplexMatrix u) -> QubitChannel {
    return [u](const DensityMatrix& rho) -> ComplexMatrix { return u * rho.matrix() * u.adjoint(); };
  };
  ComplexMatrix e11 = ComplexMatrix::Zero(4, 4);
  e11(0, 0) = 1.0;
  const double d_id = max_abs(qpt_single(simulate_process(unitary(identity(2)), 1)).chi - e11);

  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(16);
  c(0) = c(3) = c(12) = 0.5;
  c(15) = -0.5;
  const double d_cz = max_abs(qpt_two(simulate_process(unitary(cz_unitary()), 2)).chi - c * c.adjoint());

  const KrausSet depol{0.5 * identity(2), 0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()};
  const double d_dep = std::abs(avg_gate_fidelity(depol, identity(2)) - 0.5);
  const double d_u = std::max(std::abs(avg_gate_fidelity({hadamard_unitary()}, hadamard_unitary()) - 1.0),
                              std::abs(avg_gate_fidelity({cz_unitary()}, cz_unitary()) - 1.0));
  return {d_id <= 1e-12 && d_cz <= 1e-8 && d_dep <= 1e-12 && d_u <= 1e-12,
          fmt("identity chi %.1e, CZ chi %.1e, depolarizing %.1e, unitary %.1e", d_id, d_cz, d_dep, d_u)};
}

Outcome propagator_suite() {
  auto two_level = [](std::function<ComplexMatrix(double)> h, std::vector<ComplexMatrix> jumps) {
    LindbladGenerator g;
    g.dim = 2;
    g.hamiltonian = std::move(h);
    g.jumps = std::move(jumps);
    return g;
  };
  const double om = 2.0;
  auto rabi = two_level([om](double) -> ComplexMatrix { return 0.5 * om * pauli_x(); }, {});
  const TimeGrid grid(0.0, 5.0, 2001);
  auto traj = propagate_lindblad(rabi, DensityMatrix::basis(2, 0), grid);
  double e_rabi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    e_rabi = std::max(e_rabi, std::abs(traj[i].population(1) - std::pow(std::sin(om * grid.at(i) / 2), 2)));

  const double gamma = 1.3;
  auto decay = two_level([](double) -> ComplexMatrix { return ComplexMatrix::Zero(2, 2); },
                         {std::sqrt(gamma) * ket_bra(2, 0, 1)});
  traj = propagate_lindblad(decay, DensityMatrix::basis(2, 1), grid);
  double e_decay = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    e_decay = std::max(e_decay, std::abs(traj[i].population(1) - std::exp(-gamma * grid.at(i))));

  auto mixed = two_level([](double t) -> ComplexMatrix { return (1.0 + 0.3 * std::sin(t)) * pauli_x() + 0.2 * pauli_z(); },
                         {std::sqrt(0.7) * ket_bra(2, 0, 1)});
  PropagationOptions raw;
  raw.renormalize_every = 0;
  traj = propagate_lindblad(mixed, DensityMatrix::basis(2, 1), TimeGrid(0.0, 20.0, 10001), raw);
  double drift = 0.0;
  for (const auto& r : traj) drift = std::max(drift, std::abs(r.trace() - 1.0));

  auto err = [&](std::size_t n) {
    auto r = propagate_final(rabi, DensityMatrix::basis(2, 0), TimeGrid(0.0, 5.0, n));
    return std::abs(r.population(1) - std::pow(std::sin(om * 5.0 / 2), 2));
  };
  const double ratio = err(201) / err(401);
  return {e_rabi <= 1e-6 && e_decay <= 1e-6 && drift < 1e-8 && ratio > 12.0 && ratio < 20.0,
          fmt("Rabi %.1e, decay %.1e, trace drift %.1e over 1e4 steps, RK4 ratio %.2f", e_rabi, e_decay, drift, ratio)};
}

Outcome inertial_identity() {
  double worst = 0.0;
  for (double area : {20.0, 50.0, 200.0}) {
    const double tf = 1.0;
    const TimeGrid grid(0.0, tf, 4001);
    std::vector<double> om(grid.size(), area);
    const auto th = cubic_profile(tf);
    const auto fr = to_inertial_frame(two_level_hamiltonian(th, om, grid), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double chi = th.rate(grid.at(i)) / area;
      const ComplexMatrix closed = area * (pauli_z() - 0.5 * chi * pauli_y());
      worst = std::max(worst, max_abs(fr.frame_H[i] - closed));
    }
  }
  const TimeGrid grid(0.0, 2.0, 801);
  std::vector<double> om(grid.size(), 7.0);
  const auto rep = analyze_profile(linear_profile(2.0), om, grid);
  const double eta = *std::max_element(rep.eta_I.begin(), rep.eta_I.end());
  return {worst <= 1e-6 && eta <= 1e-10, fmt("frame Hamiltonian defect %.1e, constant-chi eta_I %.1e", worst, eta)};
}

Outcome pulse_exactness() {
  double worst = 0.0;
  auto note = [&](double v) { worst = std::max(worst, std::abs(v)); };
  for (double tf : {1e-7, 0.5e-6, 1.0, 37.0}) {
    note(theta_cubic(0.0, tf));
    note(theta_cubic(tf, tf) - kPi / 2);
    note(theta_cubic_rate(0.0, tf) * tf);
    note(theta_cubic_rate(tf, tf) * tf);
    note(theta_quartic(tf / 2, tf) - kPi / 2);
    for (double t : {0.0, tf / 2, tf}) note(theta_quartic_rate(t, tf) * tf);
  }
  double ident = 0.0;
  const double om = kTwoPi * 50e6;
  const TimeGrid grid(0.0, 1e-6, 2001);
  for (const auto& pair : {stirap_pair(PulseShape::cubic, om, grid), stirap_pair(PulseShape::sinsq, om, grid),
                           gate_pair(PulseShape::quartic, om, grid, true)})
    for (std::size_t i = 0; i < grid.size(); ++i)
      ident = std::max(ident, std::abs((std::norm(pair.first[i]) + std::norm(pair.second[i])) / (om * om) - 1.0));
  return {worst <= 1e-12 && ident <= 1e-12,
          fmt("boundary values/derivatives %.1e (rates scaled by tf), amplitude identity %.1e (relative)", worst, ident)};
}

Outcome montecarlo() {
  const auto p = fig2_preset();
  const std::vector<PulseShape> shapes{PulseShape::quartic, PulseShape::gaussian};
  const int threads = std::min(8, resolve_threads(0));
  const auto t0 = Clock::now();
  const auto first = run_fig2_montecarlo(shapes, 100, 2026, p, threads);
  const double secs = seconds_since(t0);
  std::ostringstream a, b;
  write_csv(a, first);
  write_csv(b, run_fig2_montecarlo(shapes, 100, 2026, p, threads));
  const bool same = a.str() == b.str();
  const bool order = first[0].mean_infidelity < first[1].mean_infidelity;
  return {secs < 1800.0 && order && same && first[0].failures == 0 && first[1].failures == 0,
          fmt("mean infidelity quartic %.4f vs Gaussian %.4f, %.0f s on %d thread(s), rerun CSV %s, failures %zu/%zu",
              first[0].mean_infidelity, first[1].mean_infidelity, secs, threads, same ? "bitwise identical" : "differs",
              first[0].failures, first[1].failures)};
}

}  // namespace

int main() {
  set_log_level(LogLevel::warn);
  const struct {
    int id;
    const char* name;
    Outcome (*run)();
  } criteria[] = {
      {1, "CZ nominal fidelities", table1_nominal},
      {2, "CZ robustness ordering", table1_robustness},
      {3, "STIRAP infidelity ordering", stirap_ordering},
      {4, "optimized pulse-area trend", lambda3_trend},
      {5, "Krotov monotonicity", krotov_monotone},
      {6, "tomography oracles", tomography_oracles},
      {7, "propagator physics", propagator_suite},
      {8, "inertial identity", inertial_identity},
      {9, "pulse-family exactness", pulse_exactness},
      {10, "Monte Carlo reproduction", montecarlo},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
