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

#include "igates/pulses.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "igates/errors.hpp"
#include "igates/stencil.hpp"

namespace igates {

std::string to_string(PulseShape shape) {
  switch (shape) {
    case PulseShape::gaussian:
      return "gaussian";
    case PulseShape::sinsq:
      return "sinsq";
    case PulseShape::cubic:
      return "cubic";
    case PulseShape::quartic:
      return "quartic";
    case PulseShape::custom:
      return "custom";
  }
  return "unknown";
}

PulseShape parse_pulse_shape(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "gaussian") return PulseShape::gaussian;
  if (lower == "sinsq") return PulseShape::sinsq;
  if (lower == "cubic") return PulseShape::cubic;
  if (lower == "quartic") return PulseShape::quartic;
  if (lower == "custom") return PulseShape::custom;
  throw ConfigError("unknown pulse shape '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

ControlPulse::ControlPulse(TimeGrid grid, std::vector<Complex> samples, std::string label)
    : grid_(grid), samples_(std::move(samples)), label_(std::move(label)) {
  if (samples_.size() != grid_.size()) throw PreconditionError("ControlPulse: sample count differs from grid size");
  for (const auto& s : samples_)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw PreconditionError("ControlPulse: non-finite sample in '" + label_ + "'");
}

ControlPulse ControlPulse::zeros(const TimeGrid& grid, std::string label) {
  return ControlPulse(grid, std::vector<Complex>(grid.size(), Complex(0.0)), std::move(label));
}

ControlPulse ControlPulse::from_function(const TimeGrid& grid, const std::function<Complex(double)>& f,
                                         std::string label) {
  std::vector<Complex> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = f(grid.at(i));
  return ControlPulse(grid, std::move(s), std::move(label));
}

Complex ControlPulse::at(double t) const {
  const double dt = grid_.dt();
  const double x = (t - grid_.t0()) / dt;
  const double last = static_cast<double>(samples_.size() - 1);
  if (x < -1e-9 || x > last + 1e-9) throw DomainError("ControlPulse::at: time outside the pulse window");
  const std::size_t n = samples_.size();
  // Stencil start so that [s, s + 3] lies inside the grid.
  const double xc = std::clamp(x, 0.0, last);
  std::size_t i = static_cast<std::size_t>(std::floor(xc));
  if (i >= n - 1) i = n - 2;
  if (std::abs(xc - static_cast<double>(i)) == 0.0) return samples_[i];
  std::size_t s = i == 0 ? 0 : i - 1;
  if (s + 3 >= n) s = n - 4;
  const double u = xc - static_cast<double>(s);
  // Lagrange basis on nodes 0, 1, 2, 3 evaluated at u.
  const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  return l0 * samples_[s] + l1 * samples_[s + 1] + l2 * samples_[s + 2] + l3 * samples_[s + 3];
}

double ControlPulse::peak() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, std::abs(s));
  return m;
}

ControlPulse ControlPulse::scaled(Complex factor) const {
  std::vector<Complex> s(samples_);
  for (auto& v : s) v *= factor;
  return ControlPulse(grid_, std::move(s), label_);
}

ControlPulse ControlPulse::plus(std::span<const Complex> delta) const {
  if (delta.size() != samples_.size()) throw PreconditionError("ControlPulse::plus: size mismatch");
  std::vector<Complex> s(samples_);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += delta[i];
  return ControlPulse(grid_, std::move(s), label_);
}

// ---------------------------------------------------------------------------

namespace {

void check_window(double t, double tf) {
  if (!(tf > 0.0)) throw DomainError("theta profile: tf must be positive");
  const double slack = 1e-12 * tf;
  if (t < -slack || t > tf + slack) throw DomainError("theta profile: t outside [0, tf]");
}

}  // namespace

double theta_cubic(double t, double tf) {
  check_window(t, tf);
  const double c3 = -kPi / (tf * tf * tf);
  const double c2 = (kPi / 2.0 - c3 * tf * tf * tf) / (tf * tf);
  return c2 * t * t + c3 * t * t * t;
}

double theta_cubic_rate(double t, double tf) {
  check_window(t, tf);
  const double c3 = -kPi / (tf * tf * tf);
  const double c2 = (kPi / 2.0 - c3 * tf * tf * tf) / (tf * tf);
  return 2.0 * c2 * t + 3.0 * c3 * t * t;
}

double theta_cubic_accel(double t, double tf) {
  check_window(t, tf);
  const double c3 = -kPi / (tf * tf * tf);
  const double c2 = (kPi / 2.0 - c3 * tf * tf * tf) / (tf * tf);
  return 2.0 * c2 + 6.0 * c3 * t;
}

double theta_quartic(double t, double tf) {
  check_window(t, tf);
  const double s = t - tf / 2.0;
  const double c2 = -4.0 * kPi / (tf * tf);
  const double c4 = 8.0 * kPi / (tf * tf * tf * tf);
  return kPi / 2.0 + c2 * s * s + c4 * s * s * s * s;
}

double theta_quartic_rate(double t, double tf) {
  check_window(t, tf);
  const double s = t - tf / 2.0;
  const double c2 = -4.0 * kPi / (tf * tf);
  const double c4 = 8.0 * kPi / (tf * tf * tf * tf);
  return 2.0 * c2 * s + 4.0 * c4 * s * s * s;
}

double theta_quartic_accel(double t, double tf) {
  check_window(t, tf);
  const double s = t - tf / 2.0;
  const double c2 = -4.0 * kPi / (tf * tf);
  const double c4 = 8.0 * kPi / (tf * tf * tf * tf);
  return 2.0 * c2 + 12.0 * c4 * s * s;
}

ThetaProfile linear_profile(double tf) {
  if (!(tf > 0.0)) throw DomainError("linear_profile: tf must be positive");
  return {[tf](double t) {
            check_window(t, tf);
            return kPi * t / (2.0 * tf);
          },
          [tf](double t) {
            check_window(t, tf);
            return kPi / (2.0 * tf);
          },
          [tf](double t) {
            check_window(t, tf);
            return 0.0;
          }};
}

ThetaProfile cubic_profile(double tf) {
  if (!(tf > 0.0)) throw DomainError("cubic_profile: tf must be positive");
  return {[tf](double t) { return theta_cubic(t, tf); }, [tf](double t) { return theta_cubic_rate(t, tf); },
          [tf](double t) { return theta_cubic_accel(t, tf); }};
}

ThetaProfile quartic_profile(double tf) {
  if (!(tf > 0.0)) throw DomainError("quartic_profile: tf must be positive");
  return {[tf](double t) { return theta_quartic(t, tf); }, [tf](double t) { return theta_quartic_rate(t, tf); },
          [tf](double t) { return theta_quartic_accel(t, tf); }};
}

ThetaProfile triangle_profile(double tf) {
  if (!(tf > 0.0)) throw DomainError("triangle_profile: tf must be positive");
  return {[tf](double t) {
            check_window(t, tf);
            return t <= tf / 2.0 ? kPi * t / tf : kPi * (tf - t) / tf;
          },
          [tf](double t) {
            check_window(t, tf);
            return t <= tf / 2.0 ? kPi / tf : -kPi / tf;
          },
          [tf](double t) {
            check_window(t, tf);
            return 0.0;
          }};
}

ThetaProfile stirap_theta(PulseShape shape, double tf) {
  switch (shape) {
    case PulseShape::sinsq:
      return linear_profile(tf);
    case PulseShape::cubic:
      return cubic_profile(tf);
    default:
      throw PreconditionError("stirap_theta: " + to_string(shape) + " has no single-step mixing-angle form");
  }
}

ThetaProfile gate_theta(PulseShape shape, double tf) {
  switch (shape) {
    case PulseShape::sinsq:
      return triangle_profile(tf);
    case PulseShape::quartic:
      return quartic_profile(tf);
    default:
      throw PreconditionError("gate_theta: " + to_string(shape) + " has no two-step mixing-angle form");
  }
}

namespace {

PulsePair from_theta(const ThetaProfile& profile, double omega_max, const TimeGrid& grid, const std::string& name) {
  std::vector<Complex> pump(grid.size()), stokes(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double th = profile.theta(grid.at(i) - grid.t0());
    pump[i] = omega_max * std::sin(th);
    stokes[i] = omega_max * std::cos(th);
  }
  return {ControlPulse(grid, std::move(pump), name + ":omega1"), ControlPulse(grid, std::move(stokes), name + ":omega2")};
}

double gaussian_lobe(double t, double center, double width) {
  const double x = (t - center) / width;
  return std::exp(-4.0 * x * x);
}

}  // namespace

PulsePair stirap_pair(PulseShape shape, double omega_max, const TimeGrid& grid) {
  if (!(omega_max > 0.0)) throw PreconditionError("stirap_pair: omega_max must be positive");
  const double tf = grid.duration();
  switch (shape) {
    case PulseShape::gaussian: {
      std::vector<Complex> pump(grid.size()), stokes(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.at(i) - grid.t0();
        pump[i] = omega_max * gaussian_lobe(t, tf, tf);
        stokes[i] = omega_max * gaussian_lobe(t, 0.0, tf);
      }
      return {ControlPulse(grid, std::move(pump), "gaussian:omega1"),
              ControlPulse(grid, std::move(stokes), "gaussian:omega2")};
    }
    case PulseShape::sinsq:
    case PulseShape::cubic:
      return from_theta(stirap_theta(shape, tf), omega_max, grid, to_string(shape));
    case PulseShape::quartic:
      throw PreconditionError("stirap_pair: quartic is a two-step profile, use gate_pair");
    case PulseShape::custom:
      throw PreconditionError("stirap_pair: custom pulses are loaded from CSV");
  }
  throw PreconditionError("stirap_pair: unknown shape");
}

PulsePair gate_pair(PulseShape shape, double omega_max, const TimeGrid& grid, bool phase_flip) {
  if (!(omega_max > 0.0)) throw PreconditionError("gate_pair: omega_max must be positive");
  const double tf = grid.duration();
  const double half = tf / 2.0;
  PulsePair pair = [&]() -> PulsePair {
    switch (shape) {
      case PulseShape::gaussian: {
        std::vector<Complex> pump(grid.size()), stokes(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double t = grid.at(i) - grid.t0();
          pump[i] = omega_max * gaussian_lobe(t, half, half);
          stokes[i] = omega_max * (t <= half ? gaussian_lobe(t, 0.0, half) : gaussian_lobe(t, tf, half));
        }
        return {ControlPulse(grid, std::move(pump), "gaussian:omega1"),
                ControlPulse(grid, std::move(stokes), "gaussian:omega2")};
      }
      case PulseShape::sinsq:
      case PulseShape::quartic:
        return from_theta(gate_theta(shape, tf), omega_max, grid, to_string(shape));
      case PulseShape::cubic:
        throw PreconditionError("gate_pair: cubic is a single-step profile, use stirap_pair");
      case PulseShape::custom:
        throw PreconditionError("gate_pair: custom pulses are loaded from CSV");
    }
    throw PreconditionError("gate_pair: unknown shape");
  }();
  if (!phase_flip) return pair;
  std::vector<Complex> stokes(pair.second.samples().begin(), pair.second.samples().end());
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid.at(i) - grid.t0() > half) stokes[i] = -stokes[i];
  return {pair.first, ControlPulse(grid, std::move(stokes), pair.second.label())};
}

PulseDerivatives pulse_derivatives(const ControlPulse& p) {
  if (p.size() < 5) throw PreconditionError("pulse_derivatives: need at least 5 samples");
  const double dt = p.grid().dt();
  return {first_derivative(p.samples(), dt), second_derivative(p.samples(), dt)};
}

// ---------------------------------------------------------------------------

void write_pulse_csv(std::ostream& out, const ControlPulse& p) {
  out << "t_seconds,re_rad_per_s,im_rad_per_s\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < p.size(); ++i)
    out << p.grid().at(i) << ',' << p[i].real() << ',' << p[i].imag() << '\n';
}

ControlPulse read_pulse_csv(std::istream& in, std::string label) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("pulse CSV: empty input");
  if (line.rfind("t_seconds", 0) != 0) throw ConfigError("pulse CSV: missing header row");
  std::vector<double> t;
  std::vector<Complex> v;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double ti = 0.0, re = 0.0, im = 0.0;
    if (!(row >> ti >> re >> im)) throw ConfigError("pulse CSV: malformed row '" + line + "'");
    t.push_back(ti);
    v.emplace_back(re, im);
  }
  if (t.size() < 3) throw ConfigError("pulse CSV: need at least 3 rows");
  TimeGrid grid(t.front(), t.back(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (std::abs(t[i] - grid.at(i)) > 1e-9 * grid.duration())
      throw ConfigError("pulse CSV: time column is not uniformly spaced");
  return ControlPulse(grid, std::move(v), std::move(label));
}

ControlPulse read_pulse_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pulse CSV '" + path + "'");
  return read_pulse_csv(in, path);
}

void write_pulse_csv_file(const std::string& path, const ControlPulse& p) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write pulse CSV '" + path + "'");
  write_pulse_csv(out, p);
}

}  // namespace igates
