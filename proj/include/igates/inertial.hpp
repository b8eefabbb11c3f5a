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

#include <span>
#include <vector>

#include "json.hpp"

#include "igates/linops.hpp"
#include "igates/pulses.hpp"

namespace igates {

// Order of the instantaneous eigenbasis used as columns of P(t).
// Descending puts the upper eigenvalue first, so a two-level Omega(cos t sz + sin t sx)
// maps to Omega sz plus the rotation term.
enum class EigenOrder { ascending, descending };

struct FrameTrajectory {
  TimeGrid grid;
  std::vector<ComplexMatrix> lab_H;
  std::vector<ComplexMatrix> frame_H;  // P^dag H P - i P^dag dP/dt
  std::vector<ComplexMatrix> P;
  std::vector<double> omega;  // spectral radius of lab_H
  std::vector<double> tau;    // integral of omega
};

FrameTrajectory to_inertial_frame(std::span<const ComplexMatrix> h, const TimeGrid& grid,
                                  EigenOrder order = EigenOrder::descending);

std::vector<ComplexMatrix> sample_hamiltonian(const LindbladGenerator& gen, const TimeGrid& grid);

/// Omega(t) (cos theta sz + sin theta sx) sampled on the grid.
std::vector<ComplexMatrix> two_level_hamiltonian(const ThetaProfile& theta, std::span<const double> omega,
                                                 const TimeGrid& grid);

std::vector<double> stirap_chi(const ThetaProfile& theta, std::span<const double> omega, const TimeGrid& grid);

std::vector<double> eta_inertial(std::span<const double> chi, std::span<const double> omega, const TimeGrid& grid);

std::vector<double> eta_adiabatic_2level(std::span<const double> chi);

/// max_{m != n} |<m| dH/dt |n>| / (e_m - e_n)^2, eigenstates in ascending order.
std::vector<double> eta_adiabatic_general(std::span<const ComplexMatrix> h, const TimeGrid& grid, int n);

/// Same structure with dM/dtau on a possibly non-uniform tau axis.
std::vector<double> eta_inertial_general(std::span<const ComplexMatrix> m, std::span<const double> tau, int n);

std::vector<double> rescaled_time(std::span<const double> omega, const TimeGrid& grid);

struct InertialReport {
  std::vector<double> chi;
  std::vector<double> eta_I;
  std::vector<double> eta_A;
  double max_eta_I = 0.0;
  double max_eta_A = 0.0;
  double mean_eta_I = 0.0;
};

InertialReport inertial_report(std::vector<double> chi, std::span<const double> omega, const TimeGrid& grid);

/// Report from an analytic mixing angle.
InertialReport analyze_profile(const ThetaProfile& theta, std::span<const double> omega, const TimeGrid& grid);

/// Report from sampled pulses: theta = atan2(|O1|, |O2|), Omega = sqrt(|O1|^2 + |O2|^2).
InertialReport analyze_pulses(const ControlPulse& omega1, const ControlPulse& omega2);

nlohmann::json to_json(const InertialReport& r, const TimeGrid& grid);

}  // namespace igates
