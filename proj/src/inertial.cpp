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

#include "igates/inertial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "igates/errors.hpp"
#include "igates/stencil.hpp"

namespace igates {

namespace {

void require_size(std::size_t got, const TimeGrid& grid, const char* what) {
  if (got != grid.size()) throw PreconditionError(std::string(what) + ": sample count differs from grid size");
}

double guarded(double omega, std::size_t i) {
  if (!(std::abs(omega) > 0.0)) {
    std::ostringstream msg;
    msg << "zero Rabi frequency at sample " << i;
    throw DomainError(msg.str());
  }
  return omega;
}

double min_gap_ratio(const std::vector<double>& ev) {
  double scale = 0.0;
  for (double v : ev) scale = std::max(scale, std::abs(v));
  double gap = INFINITY;
  for (std::size_t k = 1; k < ev.size(); ++k) gap = std::min(gap, ev[k] - ev[k - 1]);
  return scale > 0.0 ? gap / scale : 0.0;
}

// Shared kernel of the adiabatic/inertial diagnostics: h_i with derivative dh_i.
std::vector<double> escape_rate(std::span<const ComplexMatrix> h, const std::vector<ComplexMatrix>& dh, int n) {
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto ed = eig_hermitian(h[i]);
    const int dim = static_cast<int>(ed.values.size());
    if (n < 0 || n >= dim) throw PreconditionError("eigenstate index out of range");
    const ComplexVector vn = ed.vectors.col(n);
    const ComplexVector dv = dh[i] * vn;
    double worst = 0.0;
    double scale = 0.0;
    for (double v : ed.values) scale = std::max(scale, std::abs(v));
    for (int m = 0; m < dim; ++m) {
      if (m == n) continue;
      const double gap = ed.values[m] - ed.values[n];
      if (std::abs(gap) < 1e-9 * scale || gap == 0.0) throw DegeneracyError("degenerate eigenvalues at sample", i);
      const double elem = std::abs(ed.vectors.col(m).dot(dv));
      worst = std::max(worst, elem / (gap * gap));
    }
    out[i] = worst;
  }
  return out;
}

}  // namespace

std::vector<ComplexMatrix> sample_hamiltonian(const LindbladGenerator& gen, const TimeGrid& grid) {
  std::vector<ComplexMatrix> h(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) h[i] = gen.hamiltonian(grid.at(i));
  return h;
}

FrameTrajectory to_inertial_frame(std::span<const ComplexMatrix> h, const TimeGrid& grid, EigenOrder order) {
  require_size(h.size(), grid, "to_inertial_frame");
  const std::size_t n = grid.size();
  FrameTrajectory f{grid, std::vector<ComplexMatrix>(h.begin(), h.end()), {}, {}, {}, {}};
  f.P.resize(n);
  f.omega.resize(n);
  std::vector<ComplexMatrix> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ed = eig_hermitian(h[i]);
    if (ed.values.size() > 1 && min_gap_ratio(ed.values) < 1e-9) throw DegeneracyError("spectral gap closes", i);
    const int d = static_cast<int>(ed.values.size());
    ComplexMatrix p(d, d);
    Eigen::VectorXd lam(d);
    for (int c = 0; c < d; ++c) {
      const int src = order == EigenOrder::ascending ? c : d - 1 - c;
      p.col(c) = ed.vectors.col(src);
      lam(c) = ed.values[src];
    }
    if (i > 0) {
      for (int c = 0; c < d; ++c)
        if (f.P[i - 1].col(c).dot(p.col(c)).real() < 0.0) p.col(c) = -p.col(c);
    }
    f.omega[i] = std::max(std::abs(ed.values.front()), std::abs(ed.values.back()));
    f.P[i] = std::move(p);
    diag[i] = lam.cast<Complex>().asDiagonal();
  }
  const auto dp = first_derivative<ComplexMatrix>(f.P, grid.dt());
  f.frame_H.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix rot = -kI * f.P[i].adjoint() * dp[i];
    f.frame_H[i] = diag[i] + 0.5 * (rot + rot.adjoint());
  }
  f.tau = rescaled_time(f.omega, grid);
  return f;
}

std::vector<ComplexMatrix> two_level_hamiltonian(const ThetaProfile& theta, std::span<const double> omega,
                                                 const TimeGrid& grid) {
  require_size(omega.size(), grid, "two_level_hamiltonian");
  const ComplexMatrix sz = pauli_z(), sx = pauli_x();
  std::vector<ComplexMatrix> h(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double th = theta.theta(grid.at(i) - grid.t0());
    h[i] = omega[i] * (std::cos(th) * sz + std::sin(th) * sx);
  }
  return h;
}

std::vector<double> stirap_chi(const ThetaProfile& theta, std::span<const double> omega, const TimeGrid& grid) {
  require_size(omega.size(), grid, "stirap_chi");
  std::vector<double> chi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) chi[i] = theta.rate(grid.at(i) - grid.t0()) / guarded(omega[i], i);
  return chi;
}

std::vector<double> eta_inertial(std::span<const double> chi, std::span<const double> omega, const TimeGrid& grid) {
  require_size(chi.size(), grid, "eta_inertial");
  require_size(omega.size(), grid, "eta_inertial");
  const auto dchi = first_derivative<double>(chi, grid.dt());
  std::vector<double> eta(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i)
    eta[i] = std::abs(dchi[i] / (4.0 * guarded(omega[i], i) * (4.0 + chi[i] * chi[i])));
  return eta;
}

std::vector<double> eta_adiabatic_2level(std::span<const double> chi) {
  std::vector<double> eta(chi.size());
  std::transform(chi.begin(), chi.end(), eta.begin(), [](double c) { return std::abs(c) / 4.0; });
  return eta;
}

std::vector<double> eta_adiabatic_general(std::span<const ComplexMatrix> h, const TimeGrid& grid, int n) {
  require_size(h.size(), grid, "eta_adiabatic_general");
  return escape_rate(h, first_derivative<ComplexMatrix>(h, grid.dt()), n);
}

std::vector<double> eta_inertial_general(std::span<const ComplexMatrix> m, std::span<const double> tau, int n) {
  if (m.size() != tau.size()) throw PreconditionError("eta_inertial_general: size mismatch");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) throw DomainError("eta_inertial_general: tau must increase strictly");
  return escape_rate(m, first_derivative_nonuniform<ComplexMatrix>(m, tau), n);
}

std::vector<double> rescaled_time(std::span<const double> omega, const TimeGrid& grid) {
  require_size(omega.size(), grid, "rescaled_time");
  std::vector<double> tau(omega.size(), 0.0);
  const double dt = grid.dt();
  for (std::size_t i = 1; i < omega.size(); ++i) tau[i] = tau[i - 1] + 0.5 * dt * (omega[i - 1] + omega[i]);
  return tau;
}

InertialReport inertial_report(std::vector<double> chi, std::span<const double> omega, const TimeGrid& grid) {
  InertialReport r;
  r.eta_I = eta_inertial(chi, omega, grid);
  r.eta_A = eta_adiabatic_2level(chi);
  r.chi = std::move(chi);
  r.max_eta_I = *std::max_element(r.eta_I.begin(), r.eta_I.end());
  r.max_eta_A = *std::max_element(r.eta_A.begin(), r.eta_A.end());
  r.mean_eta_I = trapezoid(r.eta_I, grid.dt()) / grid.duration();
  return r;
}

InertialReport analyze_profile(const ThetaProfile& theta, std::span<const double> omega, const TimeGrid& grid) {
  return inertial_report(stirap_chi(theta, omega, grid), omega, grid);
}

InertialReport analyze_pulses(const ControlPulse& omega1, const ControlPulse& omega2) {
  if (!(omega1.grid() == omega2.grid())) throw PreconditionError("analyze_pulses: pulses on different grids");
  const TimeGrid& grid = omega1.grid();
  std::vector<double> theta(grid.size()), omega(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = std::abs(omega1[i]), b = std::abs(omega2[i]);
    theta[i] = std::atan2(a, b);
    omega[i] = std::hypot(a, b);
  }
  const auto rate = first_derivative<double>(theta, grid.dt());
  std::vector<double> chi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) chi[i] = rate[i] / guarded(omega[i], i);
  return inertial_report(std::move(chi), omega, grid);
}

nlohmann::json to_json(const InertialReport& r, const TimeGrid& grid) {
  return {{"t0", grid.t0()},         {"tf", grid.tf()},           {"n", grid.size()},
          {"chi", r.chi},            {"eta_I", r.eta_I},          {"eta_A", r.eta_A},
          {"max_eta_I", r.max_eta_I}, {"max_eta_A", r.max_eta_A}, {"mean_eta_I", r.mean_eta_I}};
}

}  // namespace igates
