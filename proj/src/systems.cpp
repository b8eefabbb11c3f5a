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

#include "igates/systems.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "igates/errors.hpp"
#include "igates/log.hpp"

namespace igates {

ComplexMatrix ControlModel::hamiltonian(std::span<const Complex> eps) const {
  if (eps.size() != couplings.size()) throw PreconditionError("ControlModel: wrong number of field values");
  ComplexMatrix h = h0;
  for (std::size_t j = 0; j < eps.size(); ++j) {
    const ComplexMatrix term = eps[j] * couplings[j];
    h += term + term.adjoint();
  }
  return h;
}

ComplexMatrix ControlModel::d_real(std::size_t j) const { return couplings.at(j) + couplings.at(j).adjoint(); }

ComplexMatrix ControlModel::d_imag(std::size_t j) const {
  return kI * (couplings.at(j) - couplings.at(j).adjoint());
}

LindbladGenerator ControlModel::generator(std::span<const ControlPulse> pulses) const {
  if (pulses.size() != couplings.size()) throw PreconditionError("ControlModel: one pulse per coupling required");
  for (const auto& p : pulses)
    if (!(p.grid() == pulses.front().grid())) throw PreconditionError("ControlModel: pulses on different grids");
  std::vector<ControlPulse> own(pulses.begin(), pulses.end());
  LindbladGenerator gen;
  gen.dim = dim;
  gen.jumps = jumps;
  gen.hamiltonian = [model = *this, own = std::move(own)](double t) {
    std::vector<Complex> eps(own.size());
    for (std::size_t j = 0; j < own.size(); ++j) eps[j] = own[j].at(t);
    return model.hamiltonian(eps);
  };
  return gen;
}

// ---------------------------------------------------------------------------

ControlModel stirap3_model(const StirapParams& p) {
  if (p.gamma_31 < 0.0 || p.gamma_32 < 0.0) throw PreconditionError("STIRAP decay rates must be non-negative");
  ControlModel m;
  m.dim = 3;
  m.h0 = ComplexMatrix::Zero(3, 3);
  m.h0(1, 1) = p.delta;
  m.couplings = {0.5 * ket_bra(3, 0, 1), 0.5 * ket_bra(3, 1, 2)};
  if (p.gamma_31 > 0.0) m.jumps.push_back(std::sqrt(p.gamma_31) * ket_bra(3, 0, 1));
  if (p.gamma_32 > 0.0) m.jumps.push_back(std::sqrt(p.gamma_32) * ket_bra(3, 2, 1));
  return m;
}

LindbladGenerator build_stirap3(const StirapParams& p, const ControlPulse& omega1, const ControlPulse& omega2) {
  const ControlPulse pulses[] = {omega1, omega2};
  return stirap3_model(p).generator(pulses);
}

ControlModel effective2_model() {
  ControlModel m;
  m.dim = 2;
  m.h0 = ComplexMatrix::Zero(2, 2);
  // eps C + h.c. with C = sz / 4 keeps only Re(eps) sz / 2.
  m.couplings = {0.25 * pauli_z(), 0.5 * ket_bra(2, 0, 1)};
  return m;
}

LindbladGenerator build_effective2(const ControlPulse& omega1, const ControlPulse& omega2) {
  const ControlPulse pulses[] = {omega1, omega2};
  return effective2_model().generator(pulses);
}

ControlModel tripod_model(double gamma, int n_fields) {
  if (gamma < 0.0) throw PreconditionError("tripod decay rate must be non-negative");
  if (n_fields != 2 && n_fields != 3) throw PreconditionError("tripod model takes 2 or 3 fields");
  ControlModel m;
  m.dim = 4;
  m.h0 = ComplexMatrix::Zero(4, 4);
  const int e = kTripodExcited;
  if (n_fields == 3) m.couplings.push_back(0.5 * ket_bra(4, 0, e));
  m.couplings.push_back(0.5 * ket_bra(4, 1, e));
  m.couplings.push_back(0.5 * ket_bra(4, 2, e));
  if (gamma > 0.0) {
    m.jumps.push_back(std::sqrt(gamma / 2.0) * ket_bra(4, 1, e));
    m.jumps.push_back(std::sqrt(gamma / 2.0) * ket_bra(4, 2, e));
  }
  return m;
}

namespace {

bool has_sign_flip(const ControlPulse& p) {
  bool pos = false, neg = false;
  for (const auto& s : p.samples()) {
    if (s.real() > 1e-12 * p.peak()) pos = true;
    if (s.real() < -1e-12 * p.peak()) neg = true;
  }
  return pos && neg;
}

}  // namespace

LindbladGenerator build_phase_gate(const ControlPulse& omega1, const ControlPulse& omega2, double gamma) {
  if (!has_sign_flip(omega2)) log_warn("phase gate: Stokes pulse has no sign flip, the gate reduces to identity");
  const ControlPulse pulses[] = {omega1, omega2};
  return tripod_model(gamma, 2).generator(pulses);
}

LindbladGenerator build_hadamard_gate(const ControlPulse& omega0, const ControlPulse& omega1,
                                      const ControlPulse& omega2, double gamma) {
  const double p0 = omega0.peak(), p1 = omega1.peak(), p2 = omega2.peak();
  if (!(p1 > 0.0)) throw ConfigError("Hadamard gate: omega1 is identically zero");
  const double ratio = std::sqrt(2.0) - 1.0;
  if (std::abs(p0 / p1 - ratio) > 0.01 * ratio)
    throw ConfigError("Hadamard gate: |omega0| / |omega1| must equal sqrt(2) - 1");
  const double bright = std::hypot(p0, p1);
  if (std::abs(p2 - bright) > 0.01 * bright)
    throw ConfigError("Hadamard gate: omega2 peak must equal sqrt(omega0^2 + omega1^2)");
  if (!has_sign_flip(omega2)) log_warn("Hadamard gate: auxiliary pulse has no sign flip");
  const ControlPulse pulses[] = {omega0, omega1, omega2};
  return tripod_model(gamma, 3).generator(pulses);
}

HadamardPulses hadamard_pulses(PulseShape shape, double omega_max, const TimeGrid& grid) {
  const PulsePair pair = gate_pair(shape, omega_max, grid, true);
  const double a0 = 1.0 - std::sqrt(2.0);
  const double norm = std::hypot(a0, 1.0);
  return {pair.first.scaled(a0 / norm), pair.first.scaled(1.0 / norm), pair.second};
}

// ---------------------------------------------------------------------------

void CzParams::check() const {
  if (gamma_p < 0.0 || gamma_r < 0.0 || gamma_dep < 0.0) throw ConfigError("CZ rates must be non-negative");
  if (c6 > 0.0 && separation > 0.0 && vr > 0.0) {
    const double v = c6 / std::pow(separation, 6);
    if (std::abs(v - vr) > 1e-6 * vr) throw ConfigError("CZ parameters: vr differs from c6 / separation^6");
  }
}

double gaussian_beam_scale(double dx, double dy, double waist) {
  if (!(waist > 0.0)) throw PreconditionError("gaussian_beam_scale: waist must be positive");
  return std::exp(-(dx * dx + dy * dy) / (waist * waist));
}

NoiseSample sample_noise(const NoiseModel& model, std::uint64_t seed) {
  if (model.sigma_delta < 0.0 || model.sigma_omega < 0.0 || model.sigma_dz < 0.0 || model.sigma_dxy < 0.0 ||
      model.sigma_v < 0.0)
    throw PreconditionError("sample_noise: negative standard deviation");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  // Draw every variate unconditionally so the stream layout does not depend on which sigmas vanish.
  NoiseSample s;
  s.seed = seed;
  s.detuning_shift = model.sigma_delta * unit(rng);
  const double rel = model.omega_ref > 0.0 ? model.sigma_omega / model.omega_ref : 0.0;
  s.omega_scale_1 = 1.0 + rel * unit(rng);
  s.omega_scale_2 = 1.0 + rel * unit(rng);
  for (auto& atom : s.dpos) {
    atom[0] = model.sigma_dxy * unit(rng);
    atom[1] = model.sigma_dxy * unit(rng);
    atom[2] = model.sigma_dz * unit(rng);
  }
  for (auto& atom : s.velocity)
    for (auto& v : atom) v = model.sigma_v * unit(rng);
  return s;
}

double interaction_strength(const CzParams& p, const NoiseSample& s) {
  if (!(p.c6 > 0.0)) return p.vr;
  if (!(p.separation > 0.0)) throw PreconditionError("CZ: zero atom separation makes the interaction singular");
  const double dx = p.separation + s.dpos[1][0] - s.dpos[0][0];
  const double dy = s.dpos[1][1] - s.dpos[0][1];
  const double dz = s.dpos[1][2] - s.dpos[0][2];
  const double r2 = dx * dx + dy * dy + dz * dz;
  if (!(r2 > 0.0)) throw PreconditionError("CZ: atoms coincide, interaction is singular");
  return p.c6 / (r2 * r2 * r2);
}

LindbladGenerator build_cz(const CzParams& p, const ControlPulse& omega1, const ControlPulse& omega2,
                           const NoiseSample& sample, const NoiseModel& model) {
  p.check();
  if (!(omega1.grid() == omega2.grid())) throw PreconditionError("build_cz: pulses on different grids");
  if (p.c6 == 0.0 && p.separation == 0.0 && p.vr == 0.0) log_debug("build_cz: no interaction configured");
  const double vr = interaction_strength(p, sample);

  struct Atom {
    double scale1, scale2, z, vz, delta;
  };
  std::array<Atom, 2> atoms;
  for (int l = 0; l < 2; ++l) {
    const auto& d = sample.dpos[l];
    const double beam = gaussian_beam_scale(d[0], d[1], model.waist > 0.0 ? model.waist : 1.0);
    atoms[l] = {sample.omega_scale_1 * beam, sample.omega_scale_2 * beam, d[2], sample.velocity[l][2],
                p.delta + sample.detuning_shift};
  }

  const ComplexMatrix id4 = identity(4);
  const ComplexMatrix one_p = ket_bra(4, kCzLevelOne, kCzLevelP);
  const ComplexMatrix p_r = ket_bra(4, kCzLevelP, kCzLevelR);
  const ComplexMatrix pp = ket_bra(4, kCzLevelP, kCzLevelP);
  const ComplexMatrix rr = ket_bra(4, kCzLevelR, kCzLevelR);
  const ComplexMatrix oo = ket_bra(4, kCzLevelOne, kCzLevelOne);

  LindbladGenerator gen;
  gen.dim = 16;
  auto embed = [&](const ComplexMatrix& op, int l) { return l == 0 ? kron(op, id4) : kron(id4, op); };
  for (int l = 0; l < 2; ++l) {
    if (p.gamma_p > 0.0) gen.jumps.push_back(std::sqrt(p.gamma_p) * embed(one_p, l));
    if (p.gamma_r > 0.0) gen.jumps.push_back(std::sqrt(p.gamma_r) * embed(ket_bra(4, kCzLevelOne, kCzLevelR), l));
    if (p.gamma_dep > 0.0) {
      gen.jumps.push_back(std::sqrt(p.gamma_dep / 2.0) * embed(pp - oo, l));
      gen.jumps.push_back(std::sqrt(p.gamma_dep / 2.0) * embed(rr - pp, l));
    }
  }

  const ComplexMatrix h_int = vr * kron(rr, rr);
  const double k1 = model.k1, k2 = model.k2;
  gen.hamiltonian = [=](double t) {
    const Complex o1 = omega1.at(t), o2 = omega2.at(t);
    ComplexMatrix h = h_int;
    for (int l = 0; l < 2; ++l) {
      const Atom& a = atoms[l];
      const double z = a.z + a.vz * t;
      ComplexMatrix hl = ComplexMatrix::Zero(4, 4);
      hl(kCzLevelOne, kCzLevelP) = 0.5 * a.scale1 * o1 * std::exp(kI * (k1 * z));
      hl(kCzLevelP, kCzLevelR) = 0.5 * a.scale2 * o2 * std::exp(kI * (k2 * z));
      hl(kCzLevelP, kCzLevelOne) = std::conj(hl(kCzLevelOne, kCzLevelP));
      hl(kCzLevelR, kCzLevelP) = std::conj(hl(kCzLevelP, kCzLevelR));
      hl(kCzLevelP, kCzLevelP) = a.delta;
      h += l == 0 ? kron(hl, id4) : kron(id4, hl);
    }
    return h;
  };
  return gen;
}

PulsePair cz_pulses(PulseShape shape, double omega_max, const TimeGrid& grid) {
  return gate_pair(shape, omega_max, grid, false);
}

// ---------------------------------------------------------------------------

namespace {

double wrap(double a) { return std::remainder(a, kTwoPi); }

}  // namespace

double cz_conditional_phase(const CzParams& p, PulseShape shape, double omega_max, double tf, std::size_t steps) {
  if (!(tf > 0.0)) throw PreconditionError("cz_conditional_phase: tf must be positive");
  CzParams closed = p;
  closed.gamma_p = closed.gamma_r = closed.gamma_dep = 0.0;
  const TimeGrid grid(0.0, tf, steps + 1);
  const PulsePair pulses = cz_pulses(shape, omega_max, grid);
  const LindbladGenerator gen = build_cz(closed, pulses.first, pulses.second);

  ComplexVector psi = ComplexVector::Zero(16);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) psi(cz_index(cz_level(a), cz_level(b))) = 0.5;
  const DensityMatrix rho = propagate_final(gen, DensityMatrix::pure(psi), grid);
  const int i00 = cz_index(cz_level(0), cz_level(0));
  const int i01 = cz_index(cz_level(0), cz_level(1));
  const int i10 = cz_index(cz_level(1), cz_level(0));
  const int i11 = cz_index(cz_level(1), cz_level(1));
  return std::arg(rho(i11, i00)) - std::arg(rho(i01, i00)) - std::arg(rho(i10, i00));
}

CzCalibration calibrate_cz_duration(const CzParams& p, PulseShape shape, double omega_max,
                                    std::pair<double, double> bracket, std::size_t steps) {
  auto [lo, hi] = bracket;
  if (!(lo > 0.0) || !(hi > lo)) throw PreconditionError("calibrate_cz_duration: need 0 < t_lo < t_hi");
  CzCalibration cal;
  auto phase = [&](double tf) {
    ++cal.evaluations;
    return cz_conditional_phase(p, shape, omega_max, tf, steps);
  };

  // Coarse scan with unwrapping; phi(t) - pi must cross a multiple of 2 pi.
  constexpr int kSamples = 5;
  std::array<double, kSamples> t{}, phi{};
  for (int i = 0; i < kSamples; ++i) {
    t[i] = lo + (hi - lo) * i / (kSamples - 1);
    const double raw = phase(t[i]);
    phi[i] = i == 0 ? wrap(raw) : phi[i - 1] + wrap(raw - phi[i - 1]);
  }
  bool increasing = true, decreasing = true;
  for (int i = 1; i < kSamples; ++i) {
    increasing = increasing && phi[i] >= phi[i - 1];
    decreasing = decreasing && phi[i] <= phi[i - 1];
  }
  if (!increasing && !decreasing) log_warn("calibrate_cz_duration: conditional phase is not monotone over bracket");

  auto branch = [](double v) { return std::floor((v - kPi) / kTwoPi); };
  int seg = -1;
  for (int i = 0; i + 1 < kSamples && seg < 0; ++i) {
    if (std::abs(wrap(phi[i] - kPi)) < 1e-3) {
      cal.tf = t[i];
      cal.phase = phi[i];
      return cal;
    }
    if (branch(phi[i]) != branch(phi[i + 1])) seg = i;
  }
  if (seg < 0) {
    std::ostringstream msg;
    msg << "calibrate_cz_duration: conditional phase does not reach an odd multiple of pi in [" << lo << ", " << hi
        << "] s";
    throw CalibrationError(msg.str());
  }

  const double target = kPi + kTwoPi * std::max(branch(phi[seg]), branch(phi[seg + 1]));
  double a = t[seg], b = t[seg + 1];
  double fa = phi[seg] - target;
  double pa = phi[seg];
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (a + b);
    const double pm = pa + wrap(phase(m) - pa);
    const double fm = pm - target;
    if (std::abs(fm) < 1e-3) {
      cal.tf = m;
      cal.phase = pm;
      return cal;
    }
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
      pa = pm;
    } else {
      b = m;
    }
  }
  throw CalibrationError("calibrate_cz_duration: bisection did not converge");
}

}  // namespace igates
