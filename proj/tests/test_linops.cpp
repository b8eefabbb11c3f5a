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


#include <cmath>
#include <vector>

#include "doctest.h"

#include "igates/errors.hpp"
#include "igates/linops.hpp"

using namespace igates;

namespace {

LindbladGenerator rabi(double omega) {
  LindbladGenerator g;
  g.dim = 2;
  g.hamiltonian = [omega](double) -> ComplexMatrix { return 0.5 * omega * pauli_x(); };
  return g;
}

LindbladGenerator decay(double gamma) {
  LindbladGenerator g;
  g.dim = 2;
  g.hamiltonian = [](double) -> ComplexMatrix { return ComplexMatrix::Zero(2, 2); };
  g.jumps.push_back(std::sqrt(gamma) * ket_bra(2, 0, 1));
  return g;
}

double rabi_error(std::size_t n) {
  const double omega = 2.0;
  const TimeGrid grid(0.0, 5.0, n);
  const auto rho = propagate_final(rabi(omega), DensityMatrix::basis(2, 0), grid);
  return std::abs(rho.population(1) - std::pow(std::sin(omega * 5.0 / 2.0), 2));
}

}  // namespace

TEST_SUITE("linops") {

TEST_CASE("eig_hermitian on textbook matrices") {
  auto z = eig_hermitian(pauli_z());
  CHECK(z.values[0] == doctest::Approx(-1.0));
  CHECK(z.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(z.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(z.vectors(0, 1)) == doctest::Approx(1.0));

  auto x = eig_hermitian(pauli_x());
  CHECK(x.values[0] == doctest::Approx(-1.0));
  CHECK(std::abs(x.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(x.vectors(0, 0) + x.vectors(1, 0)) < 1e-12);

  const double th = kPi / 8.0;
  ComplexMatrix h = std::cos(th) * pauli_z() + std::sin(th) * pauli_x();
  auto e = eig_hermitian(h);
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigenvector gauge: largest entry real positive") {
  ComplexMatrix h(3, 3);
  h << 1.0, Complex(0.3, 0.4), 0.0, Complex(0.3, -0.4), -0.5, Complex(0, 0.2), 0.0, Complex(0, -0.2), 2.0;
  auto e = eig_hermitian(h);
  for (int k = 0; k < 3; ++k) {
    Eigen::Index r = 0;
    e.vectors.col(k).cwiseAbs().maxCoeff(&r);
    CHECK(std::abs(e.vectors(r, k).imag()) < 1e-12);
    CHECK(e.vectors(r, k).real() > 0.0);
  }
}

TEST_CASE("zero generator keeps the state") {
  LindbladGenerator g;
  g.dim = 2;
  g.hamiltonian = [](double) -> ComplexMatrix { return ComplexMatrix::Zero(2, 2); };
  ComplexVector psi(2);
  psi << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const auto rho0 = DensityMatrix::pure(psi);
  const auto traj = propagate_lindblad(g, rho0, TimeGrid(0.0, 1.0, 50));
  CHECK(traj.size() == 50);
  CHECK(max_abs(traj.back().matrix() - rho0.matrix()) < 1e-15);
}

TEST_CASE("Rabi oscillation matches sin^2") {
  const double omega = 2.0;
  const TimeGrid grid(0.0, 5.0, 2001);
  const auto traj = propagate_lindblad(rabi(omega), DensityMatrix::basis(2, 0), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(traj[i].population(1) - std::pow(std::sin(omega * grid.at(i) / 2.0), 2)));
  CHECK(worst < 1e-6);
}

TEST_CASE("spontaneous decay is exponential") {
  const double gamma = 1.3;
  const TimeGrid grid(0.0, 3.0, 2001);
  const auto traj = propagate_lindblad(decay(gamma), DensityMatrix::basis(2, 1), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(traj[i].population(1) - std::exp(-gamma * grid.at(i))));
  CHECK(worst < 1e-6);
}

TEST_CASE("trace drift over 1e4 steps without renormalization") {
  LindbladGenerator g = decay(0.7);
  g.hamiltonian = [](double t) -> ComplexMatrix { return (1.0 + 0.3 * std::sin(t)) * pauli_x() + 0.2 * pauli_z(); };
  PropagationOptions opts;
  opts.renormalize_every = 0;
  const auto traj = propagate_lindblad(g, DensityMatrix::basis(2, 1), TimeGrid(0.0, 20.0, 10001), opts);
  double drift = 0.0;
  for (const auto& r : traj) drift = std::max(drift, std::abs(r.trace() - 1.0));
  CHECK(drift < 1e-8);
}

TEST_CASE("RK4 error falls by about 16 on halving dt") {
  const double ratio = rabi_error(201) / rabi_error(401);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("too coarse a step raises StepSizeError") {
  CHECK_THROWS_AS(propagate_final(rabi(200.0), DensityMatrix::basis(2, 0), TimeGrid(0.0, 5.0, 11)), StepSizeError);
}

TEST_CASE("state fidelity examples") {
  CHECK(state_fidelity(DensityMatrix::basis(3, 2), DensityMatrix::basis(3, 2)) == doctest::Approx(1.0));
  CHECK(state_fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::basis(2, 0)) == doctest::Approx(0.5));
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 0.1;
  m(2, 2) = 0.9;
  CHECK(state_fidelity(DensityMatrix(m), DensityMatrix::basis(3, 2)) == doctest::Approx(0.9));
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.7;
  CHECK_THROWS_AS(DensityMatrix{m}, PreconditionError);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix{m}, PreconditionError);
  m = ComplexMatrix::Identity(2, 2) * 0.5;
  m(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix{m}, PreconditionError);
}

TEST_CASE("kron examples") {
  CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);
  ComplexVector v = kron(pauli_x(), identity(2)) * basis_ket(4, 0);
  CHECK(std::abs(v(2) - 1.0) < 1e-15);
  ComplexMatrix zz = kron(pauli_z(), pauli_z());
  CHECK(zz(0, 0).real() == 1.0);
  CHECK(zz(1, 1).real() == -1.0);
  CHECK(zz(2, 2).real() == -1.0);
  CHECK(zz(3, 3).real() == 1.0);
}

TEST_CASE("adjoint propagation with no dynamics is constant") {
  LindbladGenerator g;
  g.dim = 3;
  g.hamiltonian = [](double) -> ComplexMatrix { return ComplexMatrix::Zero(3, 3); };
  const ComplexMatrix target = ket_bra(3, 2, 2);
  const auto xi = propagate_adjoint(g, target, TimeGrid(0.0, 1.0, 20));
  for (const auto& x : xi) CHECK(max_abs(x - target) < 1e-15);
}

TEST_CASE("trapezoid integrates linear functions exactly") {
  std::vector<double> f{0.0, 1.0, 2.0, 3.0};
  CHECK(trapezoid(f, 0.5) == doctest::Approx(2.25));
}

}  // TEST_SUITE
