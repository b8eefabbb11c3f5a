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

#include "igates/krotov.hpp"

#include <algorithm>
#include <cmath>

#include "igates/errors.hpp"
#include "igates/inertial.hpp"
#include "igates/log.hpp"

namespace igates {

namespace {

void check_pulses(std::span<const ControlPulse> pulses, const ControlModel& model) {
  if (pulses.empty()) throw PreconditionError("krotov: no control pulses");
  if (pulses.size() != model.couplings.size()) throw PreconditionError("krotov: one pulse per coupling required");
  for (const auto& p : pulses)
    if (!(p.grid() == pulses[0].grid())) throw PreconditionError("krotov: pulses must share one grid");
}

void rk4(const LindbladKernel& k, const ComplexMatrix& h0, const ComplexMatrix& hm, const ComplexMatrix& h1, double dt,
         ComplexMatrix& rho) {
  ComplexMatrix k1, k2, k3, k4;
  k.apply(h0, rho, k1);
  k.apply(hm, rho + 0.5 * dt * k1, k2);
  k.apply(hm, rho + 0.5 * dt * k2, k3);
  k.apply(h1, rho + dt * k3, k4);
  rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Sweep {
  std::vector<std::vector<double>> delta;  // per quadrature, per sample
  std::vector<ComplexMatrix> trajectory;
  double max_residual = 0.0;
  std::size_t solves = 0;
};

// Forward pass with the field updated sample by sample. `sources` holds F from the previous trajectory;
// entries up to the current sample are overwritten with values from the updated state.
Sweep forward_sweep(const KrotovState& s, const ControlModel& model, const DensityMatrix& rho0,
                    const std::vector<ComplexMatrix>& dops, std::vector<std::vector<double>> sources,
                    const BandedLU& lu, bool complex_controls) {
  const TimeGrid& grid = s.pulses[0].grid();
  const std::size_t n = grid.size();
  const std::size_t m = s.pulses.size();
  const std::size_t nq = dops.size();
  const double dt = grid.dt();
  const LindbladKernel kernel(model.generator(s.pulses));

  Sweep out;
  out.delta.assign(nq, std::vector<double>(n, 0.0));
  out.trajectory.resize(n);
  ComplexMatrix rho = rho0.matrix();
  std::vector<Complex> e0(m), em(m), e1(m);
  for (std::size_t i = 0; i < n; ++i) {
    out.trajectory[i] = rho;
    if (i == n - 1) break;
    if (i > 0) {
      for (std::size_t q = 0; q < nq; ++q) {
        sources[q][i] = update_source(s.costate[i], dops[q], rho);
        double res = 0.0;
        const auto x = lu.solve(sources[q], &res);
        out.max_residual = std::max(out.max_residual, res);
        ++out.solves;
        out.delta[q][i] = x[i];
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      const Complex d(out.delta[complex_controls ? 2 * j : j][i], complex_controls ? out.delta[2 * j + 1][i] : 0.0);
      e0[j] = s.pulses[j][i] + d;
      e1[j] = s.pulses[j][i + 1] + d;
      em[j] = 0.5 * (e0[j] + e1[j]);
    }
    rk4(kernel, model.hamiltonian(e0), model.hamiltonian(em), model.hamiltonian(e1), dt, rho);
  }
  return out;
}

std::vector<ControlPulse> apply_update(const KrotovState& s, const std::vector<std::vector<double>>& delta,
                                       bool complex_controls, std::vector<ControlPulse>* updates) {
  std::vector<ControlPulse> out;
  const std::size_t n = s.pulses[0].size();
  for (std::size_t j = 0; j < s.pulses.size(); ++j) {
    std::vector<Complex> d(n);
    for (std::size_t i = 0; i < n; ++i)
      d[i] = Complex(delta[complex_controls ? 2 * j : j][i], complex_controls ? delta[2 * j + 1][i] : 0.0);
    out.push_back(s.pulses[j].plus(d));
    if (updates) updates->emplace_back(s.pulses[j].grid(), std::move(d));
  }
  return out;
}

}  // namespace

double penalty(std::span<const ControlPulse> pulses, const CostWeights& w) {
  double total = 0.0;
  for (const auto& p : pulses) {
    const double dt = p.grid().dt();
    const auto d = pulse_derivatives(p);
    std::vector<double> a(p.size()), b(p.size()), c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      a[i] = std::norm(p[i]);
      b[i] = std::norm(d.first[i]);
      c[i] = std::norm(d.second[i]);
    }
    total += w.lambda1 * trapezoid(a, dt);
    if (w.lambda2 != 0.0) total += w.lambda2 * trapezoid(b, dt);
    if (w.lambda3 != 0.0) total += w.lambda3 * trapezoid(c, dt);
  }
  return total;
}

double functional_J(std::span<const DensityMatrix> traj, std::span<const ControlPulse> pulses,
                    const DensityMatrix& target, const CostWeights& w, std::span<const ControlPulse> reference) {
  if (traj.empty()) throw PreconditionError("functional_J: empty trajectory");
  const double fid = (target.matrix() * traj.back().matrix()).trace().real();
  if (reference.empty()) return -fid + penalty(pulses, w);
  if (reference.size() != pulses.size()) throw PreconditionError("functional_J: reference size mismatch");
  std::vector<ControlPulse> diff;
  for (std::size_t j = 0; j < pulses.size(); ++j) {
    std::vector<Complex> d(pulses[j].size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = pulses[j][i] - reference[j][i];
    diff.emplace_back(pulses[j].grid(), std::move(d));
  }
  return -fid + penalty(diff, w);
}

std::vector<ComplexMatrix> backward_costate(const LindbladGenerator& gen, const DensityMatrix& target,
                                            const TimeGrid& grid) {
  return propagate_adjoint(gen, target.matrix(), grid);
}

double update_source(const ComplexMatrix& xi, const ComplexMatrix& d, const ComplexMatrix& rho) {
  // Tr{xi (-i[D, rho])} = Im Tr{xi [D, rho]}
  const Complex c = (xi * (d * rho - rho * d)).trace();
  return -0.5 * c.imag();
}

KrotovState initial_state(const ControlModel& model, std::vector<ControlPulse> guess, const DensityMatrix& rho0,
                          const DensityMatrix& target) {
  check_pulses(guess, model);
  KrotovState s;
  s.pulses = std::move(guess);
  const TimeGrid& grid = s.pulses[0].grid();
  const auto gen = model.generator(s.pulses);
  s.forward = propagate_lindblad(gen, rho0, grid);
  s.costate = backward_costate(gen, target, grid);
  const double fid = state_fidelity(s.forward.back(), target);
  s.j_history.push_back(-fid);
  s.fidelity_history.push_back(fid);
  return s;
}

KrotovState krotov_step(const KrotovState& state, const ControlModel& model, const DensityMatrix& rho0,
                        const DensityMatrix& target, const CostWeights& w, const KrotovOptions& opts) {
  check_pulses(state.pulses, model);
  const TimeGrid& grid = state.pulses[0].grid();
  const std::size_t n = grid.size();
  std::vector<ComplexMatrix> dops;
  for (std::size_t j = 0; j < model.couplings.size(); ++j) {
    dops.push_back(model.d_real(j));
    if (opts.complex_controls) dops.push_back(model.d_imag(j));
  }
  auto sources_from = [&](auto&& rho_at) {
    std::vector<std::vector<double>> f(dops.size(), std::vector<double>(n, 0.0));
    for (std::size_t q = 0; q < dops.size(); ++q)
      for (std::size_t i = 0; i < n; ++i) f[q][i] = update_source(state.costate[i], dops[q], rho_at(i));
    return f;
  };
  const auto old_sources =
      sources_from([&](std::size_t i) -> const ComplexMatrix& { return state.forward[i].matrix(); });

  // Damping doubles every weight, which halves the update while keeping the sweep self-consistent.
  const double j_ref = -state.fidelity();
  double max_residual = state.max_residual;
  std::size_t solves = state.solves;
  CostWeights wh = w;
  for (int h = 0; h <= opts.max_halvings; ++h) {
    const BandedSystem a = assemble_banded(wh, grid);
    const BandedLU lu(a);
    Sweep sweep = forward_sweep(state, model, rho0, dops, old_sources, lu, opts.complex_controls);
    if (opts.second_sweep) {
      const auto traj = sweep.trajectory;
      const double r = sweep.max_residual;
      const std::size_t c = sweep.solves;
      sweep = forward_sweep(state, model, rho0, dops,
                            sources_from([&](std::size_t i) -> const ComplexMatrix& { return traj[i]; }), lu,
                            opts.complex_controls);
      sweep.max_residual = std::max(sweep.max_residual, r);
      sweep.solves += c;
    }
    max_residual = std::max(max_residual, sweep.max_residual);
    solves += sweep.solves;
    wh.lambda1 *= 2.0;
    wh.lambda2 *= 2.0;
    wh.lambda3 *= 2.0;

    std::vector<ControlPulse> updates;
    auto pulses = apply_update(state, sweep.delta, opts.complex_controls, &updates);
    const auto gen = model.generator(pulses);
    std::vector<DensityMatrix> traj;
    try {
      traj = propagate_lindblad(gen, rho0, grid);
    } catch (const StepSizeError&) {
      continue;  // an update the integrator cannot resolve counts as a rejected step
    }
    const double fid = state_fidelity(traj.back(), target);
    const double j_new = -fid + penalty(updates, w);
    if (j_new <= j_ref) {
      if (h > 0) log_debug("krotov: update accepted after " + std::to_string(h) + " halvings");
      KrotovState next;
      next.iteration = state.iteration + 1;
      next.pulses = std::move(pulses);
      next.forward = std::move(traj);
      next.costate = backward_costate(gen, target, grid);
      next.j_history = state.j_history;
      next.j_history.push_back(j_new);
      next.fidelity_history = state.fidelity_history;
      next.fidelity_history.push_back(fid);
      next.max_residual = max_residual;
      next.solves = solves;
      return next;
    }
  }
  throw StagnationError("krotov: no descent after " + std::to_string(opts.max_halvings) + " halvings",
                        state.j_history.back());
}

OptimizeResult optimize(std::vector<ControlPulse> guess, const ControlModel& model, const DensityMatrix& rho0,
                        const DensityMatrix& target, const CostWeights& w, const KrotovOptions& opts) {
  w.check();
  KrotovState s = initial_state(model, std::move(guess), rho0, target);
  std::string reason = "max_iter";
  if (s.fidelity() >= opts.fidelity_goal) {
    reason = "fidelity_goal";
  } else {
    while (s.iteration < opts.max_iter) {
      s = krotov_step(s, model, rho0, target, w, opts);
      const std::size_t k = s.j_history.size();
      log_debug("krotov iteration " + std::to_string(s.iteration) + ": F = " + std::to_string(s.fidelity()));
      if (s.fidelity() >= opts.fidelity_goal) {
        reason = "fidelity_goal";
        break;
      }
      if (std::abs(s.j_history[k - 1] - s.j_history[k - 2]) < opts.dj_tol) {
        reason = "dj_tol";
        break;
      }
    }
  }

  KrotovReport r;
  r.weights = w;
  r.iterations = s.iteration;
  r.j_history = s.j_history;
  r.fidelity_history = s.fidelity_history;
  r.final_fidelity = s.fidelity();
  r.max_residual = s.max_residual;
  r.stop_reason = reason;
  const double duration = s.pulses[0].grid().duration();
  for (const auto& p : s.pulses) r.pulse_area = std::max(r.pulse_area, p.peak() * duration);
  if (s.pulses.size() == 2) {
    try {
      const auto ir = analyze_pulses(s.pulses[0], s.pulses[1]);
      r.mean_eta_i = ir.mean_eta_I;
      r.max_eta_i = ir.max_eta_I;
    } catch (const Error& e) {
      log_warn(std::string("krotov report: inertial analysis skipped: ") + e.what());
    }
  }
  return {std::move(s.pulses), std::move(r)};
}

nlohmann::json to_json(const KrotovReport& r) {
  return {{"weights", {{"lambda1", r.weights.lambda1}, {"lambda2", r.weights.lambda2}, {"lambda3", r.weights.lambda3}}},
          {"iterations", r.iterations},
          {"J_history", r.j_history},
          {"fidelity_history", r.fidelity_history},
          {"final_fidelity", r.final_fidelity},
          {"pulse_area", r.pulse_area},
          {"mean_eta_I", r.mean_eta_i},
          {"max_eta_I", r.max_eta_i},
          {"max_banded_residual", r.max_residual},
          {"stop_reason", r.stop_reason}};
}

}  // namespace igates
