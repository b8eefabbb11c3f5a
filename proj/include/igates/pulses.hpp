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

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "igates/linops.hpp"

namespace igates {

enum class PulseShape { gaussian, sinsq, cubic, quartic, custom };

std::string to_string(PulseShape shape);
/// Accepts "gaussian", "sinsq", "cubic", "quartic", "custom" (case-insensitive).
PulseShape parse_pulse_shape(std::string_view name);

/// Complex Rabi-frequency envelope (rad/s) sampled on a uniform grid.
class ControlPulse {
 public:
  ControlPulse(TimeGrid grid, std::vector<Complex> samples, std::string label = {});

  static ControlPulse zeros(const TimeGrid& grid, std::string label = {});
  static ControlPulse from_function(const TimeGrid& grid, const std::function<Complex(double)>& f,
                                    std::string label = {});

  const TimeGrid& grid() const { return grid_; }
  std::span<const Complex> samples() const { return samples_; }
  Complex operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  const std::string& label() const { return label_; }

  /// Four-point Lagrange interpolation; exact at the samples.
  Complex at(double t) const;
  /// max |sample|
  double peak() const;

  ControlPulse scaled(Complex factor) const;
  /// Pointwise sum with a same-length correction.
  ControlPulse plus(std::span<const Complex> delta) const;

 private:
  TimeGrid grid_;
  std::vector<Complex> samples_;
  std::string label_;
};

/// Mixing angle theta(t) with analytic first and second derivatives.
struct ThetaProfile {
  std::function<double(double)> theta;
  std::function<double(double)> rate;
  std::function<double(double)> accel;
};

/// C2 t^2 + C3 t^3 with C3 = -pi/tf^3, C2 = (pi/2 - C3 tf^3)/tf^2; t in [0, tf].
double theta_cubic(double t, double tf);
double theta_cubic_rate(double t, double tf);
double theta_cubic_accel(double t, double tf);

/// pi/2 - (4 pi/tf^2)(t - tf/2)^2 + (8 pi/tf^4)(t - tf/2)^4; t in [0, tf].
double theta_quartic(double t, double tf);
double theta_quartic_rate(double t, double tf);
double theta_quartic_accel(double t, double tf);

ThetaProfile linear_profile(double tf);    // pi t / (2 tf)
ThetaProfile cubic_profile(double tf);
ThetaProfile quartic_profile(double tf);
ThetaProfile triangle_profile(double tf);  // linear up to pi/2 at tf/2 and back

/// Mixing angle behind a parameterized single-step shape (sinSQ, cubic).
ThetaProfile stirap_theta(PulseShape shape, double tf);
/// Mixing angle behind a parameterized two-step shape (sinSQ, quartic).
ThetaProfile gate_theta(PulseShape shape, double tf);

struct PulsePair {
  ControlPulse first;   // pump, couples the initial level (Omega_1)
  ControlPulse second;  // Stokes, couples the target level (Omega_2)
};

/// Single-step STIRAP envelopes over the grid window, Stokes first.
PulsePair stirap_pair(PulseShape shape, double omega_max, const TimeGrid& grid);

/// Two-step (out and back) envelopes. With phase_flip the Stokes samples after
/// the midpoint are negated.
PulsePair gate_pair(PulseShape shape, double omega_max, const TimeGrid& grid, bool phase_flip);

struct PulseDerivatives {
  std::vector<Complex> first;
  std::vector<Complex> second;
};

PulseDerivatives pulse_derivatives(const ControlPulse& p);

/// CSV with header t_seconds,re_rad_per_s,im_rad_per_s.
void write_pulse_csv(std::ostream& out, const ControlPulse& p);
ControlPulse read_pulse_csv(std::istream& in, std::string label = "custom");
ControlPulse read_pulse_csv_file(const std::string& path);
void write_pulse_csv_file(const std::string& path, const ControlPulse& p);

}  // namespace igates
