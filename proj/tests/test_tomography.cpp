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


#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "igates/tomography.hpp"

using namespace igates;

namespace {

QubitChannel unitary_channel(const ComplexMatrix& u) {
  return [u](const DensityMatrix& rho) -> ComplexMatrix { return u * rho.matrix() * u.adjoint(); };
}

QubitChannel kraus_channel(KrausSet k) {
  return [k](const DensityMatrix& rho) -> ComplexMatrix { return apply_kraus(k, rho.matrix()); };
}

ComplexMatrix e_jk(int dim, int j, int k) { return ket_bra(dim, j, k); }

// Amplitude damping with decay probability p plus a little dephasing.
KrausSet noisy_qubit(double p, double q) {
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2), a1 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - p);
  a1(0, 1) = std::sqrt(p);
  return {std::sqrt(1.0 - q) * a0, std::sqrt(1.0 - q) * a1, std::sqrt(q) * pauli_z() * a0, std::sqrt(q) * pauli_z() * a1};
}

ComplexMatrix swap_gate() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("process inputs propagate by linearity") {
  auto id = simulate_process(unitary_channel(identity(2)), 1);
  REQUIRE(id.size() == 4);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) CHECK(max_abs(id[2 * j + k] - e_jk(2, j, k)) < 1e-15);

  auto flip = simulate_process(unitary_channel(pauli_x()), 1);
  CHECK(max_abs(flip[0] - e_jk(2, 1, 1)) < 1e-15);
  CHECK(max_abs(flip[1] - e_jk(2, 1, 0)) < 1e-15);

  ComplexMatrix decay = ComplexMatrix::Zero(2, 2);
  decay(0, 1) = 1.0;
  auto dead = simulate_process(kraus_channel({e_jk(2, 0, 0), decay}), 1);
  CHECK(max_abs(dead[3] - e_jk(2, 0, 0)) < 1e-15);
  CHECK(max_abs(dead[1]) < 1e-15);
  CHECK(max_abs(dead[2]) < 1e-15);

  auto two = simulate_process(unitary_channel(identity(4)), 2, 2);
  REQUIRE(two.size() == 16);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) CHECK(max_abs(two[4 * j + k] - e_jk(4, j, k)) < 1e-15);
}

TEST_CASE("single-qubit process matrices of Pauli channels") {
  auto id = qpt_single(simulate_process(unitary_channel(identity(2)), 1));
  ComplexMatrix e11 = ComplexMatrix::Zero(4, 4);
  e11(0, 0) = 1.0;
  CHECK(max_abs(id.chi - e11) < 1e-12);

  auto x = qpt_single(simulate_process(unitary_channel(pauli_x()), 1));
  CHECK(std::abs(x.chi(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(x.chi.cwiseAbs().sum() - 1.0) < 1e-12);

  auto z = qpt_single(simulate_process(unitary_channel(pauli_z()), 1));
  CHECK(std::abs(z.chi(3, 3) - 1.0) < 1e-12);
  CHECK(std::abs(z.chi.cwiseAbs().sum() - 1.0) < 1e-12);
}

TEST_CASE("CZ process matrix follows its Pauli expansion") {
  auto p = qpt_two(simulate_process(unitary_channel(cz_unitary()), 2));
  // CZ = (II + IZ + ZI - ZZ) / 2, basis index 4 m1 + m2 with Z at position 3
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(16);
  c(0) = 0.5;
  c(3) = 0.5;
  c(12) = 0.5;
  c(15) = -0.5;
  CHECK(max_abs(p.chi - c * c.adjoint()) < 1e-8);

  auto id = qpt_two(simulate_process(unitary_channel(identity(4)), 2));
  CHECK(std::abs(id.chi(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(id.chi.cwiseAbs().sum() - 1.0) < 1e-12);
}

TEST_CASE("relabelling the atoms permutes the process matrix") {
  ComplexMatrix u = kron(hadamard_unitary(), identity(2)) * cz_unitary() * kron(identity(2), pauli_x());
  auto p = qpt_two(simulate_process(unitary_channel(u), 2));
  auto q = qpt_two(simulate_process(unitary_channel(swap_gate() * u * swap_gate()), 2));
  auto sw = [](int i) { return 4 * (i % 4) + i / 4; };
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n) CHECK(std::abs(q.chi(m, n) - p.chi(sw(m), sw(n))) < 1e-10);
}

TEST_CASE("closed formulas agree with linear inversion") {
  auto out1 = simulate_process(kraus_channel(noisy_qubit(0.3, 0.1)), 1);
  CHECK(max_abs(qpt_single(out1).chi - qpt_linear_inversion(out1, 1).chi) < 1e-10);
  KrausSet k2;
  for (const auto& a : noisy_qubit(0.2, 0.05)) k2.push_back(kron(a, identity(2)) * cz_unitary());
  auto out2 = simulate_process(kraus_channel(k2), 2);
  CHECK(max_abs(qpt_two(out2).chi - qpt_linear_inversion(out2, 2).chi) < 1e-10);
}

TEST_CASE("process matrix invariants of a physical channel") {
  auto p = qpt_single(simulate_process(kraus_channel(noisy_qubit(0.4, 0.2)), 1));
  CHECK(hermiticity_defect(p.chi) < 1e-8);
  auto basis = process_basis(1);
  ComplexMatrix tp = ComplexMatrix::Zero(2, 2);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) tp += p.chi(m, n) * basis[n].adjoint() * basis[m];
  CHECK(max_abs(tp - identity(2)) < 1e-6);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p.chi);
  CHECK(es.eigenvalues().minCoeff() > -1e-6);
}

TEST_CASE("Kraus extraction") {
  ComplexMatrix e11 = ComplexMatrix::Zero(4, 4);
  e11(0, 0) = 1.0;
  auto k = kraus_from_chi({1, e11});
  REQUIRE(k.size() == 1);
  CHECK(max_abs(k[0] - identity(2)) < 1e-12);

  ComplexMatrix e44 = ComplexMatrix::Zero(4, 4);
  e44(3, 3) = 1.0;
  k = kraus_from_chi({1, e44});
  REQUIRE(k.size() == 1);
  CHECK(max_abs(k[0] - pauli_z()) < 1e-12);

  k = kraus_from_chi({1, ComplexMatrix::Identity(4, 4) * 0.25});
  REQUIRE(k.size() == 4);
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& g : k) {
    sum += g.adjoint() * g;
    CHECK(std::abs((g.adjoint() * g).trace().real() - 0.5) < 1e-12);
  }
  CHECK(max_abs(sum - identity(2)) < 1e-12);

  auto noisy = qpt_single(simulate_process(kraus_channel(noisy_qubit(0.25, 0.15)), 1));
  auto kn = kraus_from_chi(noisy);
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      ComplexMatrix in = e_jk(2, j, l);
      CHECK(max_abs(apply_kraus(kn, in) - apply_chi(noisy, in)) < 1e-6);
      CHECK(max_abs(apply_kraus(kn, in) - apply_kraus(noisy_qubit(0.25, 0.15), in)) < 1e-6);
    }
}

TEST_CASE("average gate fidelity") {
  CHECK(std::abs(avg_gate_fidelity({hadamard_unitary()}, hadamard_unitary()) - 1.0) < 1e-12);
  CHECK(std::abs(avg_gate_fidelity({cz_unitary()}, cz_unitary()) - 1.0) < 1e-12);
  KrausSet depol{0.5 * identity(2), 0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()};
  CHECK(std::abs(avg_gate_fidelity(depol, identity(2)) - 0.5) < 1e-12);
  CHECK(std::abs(avg_gate_fidelity({pauli_x()}, identity(2)) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(avg_gate_fidelity({Complex(0.0, 1.0) * pauli_z()}, pauli_z()) - 1.0) < 1e-12);
}

TEST_CASE("gate characterization end to end") {
  auto r = characterize_gate(unitary_channel(cz_unitary()), 2, cz_unitary(), 2);
  CHECK(std::abs(r.fidelity - 1.0) < 1e-10);
  auto n = characterize_gate(kraus_channel(noisy_qubit(0.1, 0.0)), 1, identity(2));
  CHECK(n.fidelity < 1.0);
  CHECK(n.fidelity > 0.9);
}

TEST_CASE("serialization") {
  auto p = qpt_single(simulate_process(unitary_channel(pauli_z()), 1));
  auto j = to_json(p);
  CHECK(j["n_qubits"] == 1);
  std::ostringstream out;
  write_chi_csv(out, p);
  const std::string s = out.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);
}

}  // TEST_SUITE
