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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "igates/banded.hpp"
#include "igates/linops.hpp"
#include "igates/pulses.hpp"
#include "igates/systems.hpp"

namespace igates {

struct KrotovOptions {
  std::size_t max_iter = 50;
  double dj_tol = 0.0;         // stop when |J_k - J_{k-1}| falls below this
  double fidelity_goal = 2.0;  // > 1 disables the goal
  bool complex_controls = true;
  int max_halvings = 20;
  bool second_sweep = false;  // repeat the forward sweep with the corrected trajectory
};

struct KrotovState {
  std::size_t iteration = 0;
  std::vector<ControlPulse> pulses;
  std::vector<DensityMatrix> forward;
  std::vector<ComplexMatrix> costate;
  std::vector<double> j_history;
  std::vector<double> fidelity_history;
  double max_residual = 0.0;  // worst banded residual over all solves so far
  std::size_t solves = 0;

  double fidelity() const { return fidelity_history.back(); }
};

/// -Tr(rho_t rho_f) plus the power, velocity and acceleration penalties of `pulses`
/// (of pulses - reference when a reference is given).
double functional_J(std::span<const DensityMatrix> traj, std::span<const ControlPulse> pulses,
                    const DensityMatrix& target, const CostWeights& w,
                    std::span<const ControlPulse> reference = {});

/// lambda1 int |u|^2 + lambda2 int |u'|^2 + lambda3 int |u''|^2 summed over fields.
double penalty(std::span<const ControlPulse> pulses, const CostWeights& w);

std::vector<ComplexMatrix> backward_costate(const LindbladGenerator& gen, const DensityMatrix& target,
                                            const TimeGrid& grid);

/// Right-hand side of the update equation for one control quadrature:
/// F(t) = -1/2 Tr{xi(t) (dL/d eps) rho(t)} with dL/d eps = -i[D, .].
double update_source(const ComplexMatrix& xi, const ComplexMatrix& d, const ComplexMatrix& rho);

KrotovState initial_state(const ControlModel& model, std::vector<ControlPulse> guess, const DensityMatrix& rho0,
                          const DensityMatrix& target);

/// One accepted iteration. Throws StagnationError when max_halvings dampings all fail.
KrotovState krotov_step(const KrotovState& state, const ControlModel& model, const DensityMatrix& rho0,
                        const DensityMatrix& target, const CostWeights& w, const KrotovOptions& opts = {});

struct KrotovReport {
  CostWeights weights;
  std::size_t iterations = 0;
  std::vector<double> j_history;
  std::vector<double> fidelity_history;
  double final_fidelity = 0.0;
  double pulse_area = 0.0;  // max_j peak|eps_j| * duration
  double mean_eta_i = 0.0;
  double max_eta_i = 0.0;
  double max_residual = 0.0;
  std::string stop_reason;
};

struct OptimizeResult {
  std::vector<ControlPulse> pulses;
  KrotovReport report;
};

OptimizeResult optimize(std::vector<ControlPulse> guess, const ControlModel& model, const DensityMatrix& rho0,
                        const DensityMatrix& target, const CostWeights& w, const KrotovOptions& opts = {});

nlohmann::json to_json(const KrotovReport& r);

}  // namespace igates
