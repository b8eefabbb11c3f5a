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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "igates/linops.hpp"
#include "igates/pulses.hpp"

namespace igates {

// H(t) = h0 + sum_j (eps_j(t) C_j + h.c.); the form every optimizable system takes.
struct ControlModel {
  int dim = 0;
  ComplexMatrix h0;
  std::vector<ComplexMatrix> couplings;
  std::vector<ComplexMatrix> jumps;

  ComplexMatrix hamiltonian(std::span<const Complex> eps) const;
  /// dH/d(Re eps_j) and dH/d(Im eps_j).
  ComplexMatrix d_real(std::size_t j) const;
  ComplexMatrix d_imag(std::size_t j) const;
  LindbladGenerator generator(std::span<const ControlPulse> pulses) const;
};

struct StirapParams {
  double delta = 0.0;     // rad/s
  double gamma_31 = 0.0;  // rad/s, intermediate level -> initial level
  double gamma_32 = 0.0;  // rad/s, intermediate level -> target level
};

// Level order: 0 initial, 1 intermediate (radiative), 2 target.
ControlModel stirap3_model(const StirapParams& p);
LindbladGenerator build_stirap3(const StirapParams& p, const ControlPulse& omega1, const ControlPulse& omega2);

// H = 1/2 [[Re O1, O2], [O2*, -Re O1]]
ControlModel effective2_model();
LindbladGenerator build_effective2(const ControlPulse& omega1, const ControlPulse& omega2);

// Tripod levels: 0 = |0>, 1 = |1>, 2 = |2> (auxiliary), 3 = |e>.
inline constexpr int kTripodExcited = 3;
ControlModel tripod_model(double gamma, int n_fields);
LindbladGenerator build_phase_gate(const ControlPulse& omega1, const ControlPulse& omega2, double gamma);
/// omega0 couples |0>-|e>, omega1 couples |1>-|e>, omega2 couples |2>-|e>.
LindbladGenerator build_hadamard_gate(const ControlPulse& omega0, const ControlPulse& omega1,
                                      const ControlPulse& omega2, double gamma);

struct HadamardPulses {
  ControlPulse omega0;
  ControlPulse omega1;
  ControlPulse omega2;
};
/// Qubit couplings in the ratio omega0 = (1 - sqrt 2) omega1 with bright amplitude omega_max;
/// auxiliary coupling omega_max with the mid-protocol sign flip.
HadamardPulses hadamard_pulses(PulseShape shape, double omega_max, const TimeGrid& grid);

// ---------------------------------------------------------------------------
// Two-atom Rydberg CZ. Per-atom levels: 0 = |1>, 1 = |0> (spectator), 2 = |p>, 3 = |r>.

inline constexpr int kCzLevelOne = 0;
inline constexpr int kCzLevelZero = 1;
inline constexpr int kCzLevelP = 2;
inline constexpr int kCzLevelR = 3;

struct CzParams {
  double delta = 0.0;       // rad/s
  double vr = 0.0;          // rad/s, used when c6 == 0
  double c6 = 0.0;          // rad/s m^6
  double separation = 0.0;  // m
  double gamma_p = 0.0;     // rad/s
  double gamma_r = 0.0;     // rad/s
  double gamma_dep = 0.0;   // rad/s

  /// Throws ConfigError when vr and c6/separation^6 disagree by more than 1e-6.
  void check() const;
};

struct NoiseModel {
  double sigma_delta = 0.0;  // rad/s
  double sigma_omega = 0.0;  // rad/s
  double omega_ref = 1.0;    // rad/s, amplitude the relative scale refers to
  double sigma_dz = 0.0;     // m
  double sigma_dxy = 0.0;    // m
  double waist = 1e-6;       // m
  double k1 = 0.0;           // rad/m
  double k2 = 0.0;           // rad/m
  double sigma_v = 0.0;      // m/s
};

struct NoiseSample {
  double detuning_shift = 0.0;
  double omega_scale_1 = 1.0;
  double omega_scale_2 = 1.0;
  std::array<std::array<double, 3>, 2> dpos{};      // per atom (dx, dy, dz)
  std::array<std::array<double, 3>, 2> velocity{};  // per atom
  std::uint64_t seed = 0;

  static NoiseSample ideal() { return {}; }
};

NoiseSample sample_noise(const NoiseModel& model, std::uint64_t seed);

double gaussian_beam_scale(double dx, double dy, double waist);

/// Interaction strength for the sampled geometry (atoms along x).
double interaction_strength(const CzParams& p, const NoiseSample& s);

LindbladGenerator build_cz(const CzParams& p, const ControlPulse& omega1, const ControlPulse& omega2,
                           const NoiseSample& sample = NoiseSample::ideal(), const NoiseModel& model = {});

/// Index of the two-atom product level |a b>.
inline int cz_index(int a, int b) { return 4 * a + b; }
/// Computational-basis embedding: qubit value q -> per-atom level.
inline int cz_level(int q) { return q == 0 ? kCzLevelZero : kCzLevelOne; }

/// Conditional phase arg c11 - arg c01 - arg c10 + arg c00 after closed-system propagation of |++>.
double cz_conditional_phase(const CzParams& p, PulseShape shape, double omega_max, double tf, std::size_t steps);

struct CzCalibration {
  double tf = 0.0;
  double phase = 0.0;
  int evaluations = 0;
};

CzCalibration calibrate_cz_duration(const CzParams& p, PulseShape shape, double omega_max,
                                    std::pair<double, double> bracket, std::size_t steps = 4000);

/// Pulses used for the CZ gate (gate_pair without sign flip).
PulsePair cz_pulses(PulseShape shape, double omega_max, const TimeGrid& grid);

}  // namespace igates
