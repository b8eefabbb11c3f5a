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

#include "igates/tomography.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include "igates/errors.hpp"
#include "igates/log.hpp"
#include "igates/parallel.hpp"

namespace igates {

namespace {

std::vector<ComplexMatrix> single_basis() {
  return {identity(2), pauli_x(), -kI * pauli_y(), pauli_z()};
}

// N&C block transform for one qubit.
ComplexMatrix lambda1() {
  ComplexMatrix l(4, 4);
  const ComplexMatrix i2 = identity(2), x = pauli_x();
  l << i2, x, x, -i2;
  return 0.5 * l;
}

void check_outputs(const std::vector<ComplexMatrix>& outputs, int d) {
  if (outputs.size() != static_cast<std::size_t>(d * d)) throw PreconditionError("tomography: wrong number of outputs");
  for (const auto& o : outputs)
    if (o.rows() != d || o.cols() != d) throw PreconditionError("tomography: output dimension mismatch");
}

// Block matrix R with block (J, K) = outputs[d J + K].
ComplexMatrix block_outputs(const std::vector<ComplexMatrix>& outputs, int d) {
  ComplexMatrix r(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) r.block(j * d, k * d, d, d) = outputs[d * j + k];
  return r;
}

}  // namespace

std::vector<ComplexMatrix> process_basis(int n_qubits) {
  const auto b = single_basis();
  if (n_qubits == 1) return b;
  if (n_qubits != 2) throw PreconditionError("process_basis: one or two qubits only");
  std::vector<ComplexMatrix> out;
  for (const auto& a : b)
    for (const auto& c : b) out.push_back(kron(a, c));
  return out;
}

std::vector<ComplexMatrix> simulate_process(const QubitChannel& channel, int n_qubits, int threads) {
  if (n_qubits != 1 && n_qubits != 2) throw PreconditionError("simulate_process: one or two qubits only");
  const int d = 1 << n_qubits;
  // Pure inputs: |a><a| for each a, then |a>+|b> and |a>+i|b> for a < b.
  std::vector<ComplexVector> kets;
  for (int a = 0; a < d; ++a) kets.push_back(basis_ket(d, a));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      pairs.emplace_back(a, b);
      kets.push_back((basis_ket(d, a) + basis_ket(d, b)) / std::sqrt(2.0));
      kets.push_back((basis_ket(d, a) + kI * basis_ket(d, b)) / std::sqrt(2.0));
    }
  std::vector<ComplexMatrix> prop(kets.size());
  parallel_for(kets.size(), threads, [&](std::size_t i) {
    prop[i] = channel(DensityMatrix::pure(kets[i]));
    if (prop[i].rows() != d || prop[i].cols() != d) throw PreconditionError("simulate_process: channel output size");
  });

  std::vector<ComplexMatrix> out(d * d);
  for (int a = 0; a < d; ++a) out[d * a + a] = prop[a];
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    const ComplexMatrix& plus = prop[d + 2 * p];
    const ComplexMatrix& plus_i = prop[d + 2 * p + 1];
    const ComplexMatrix sym = 2.0 * plus - prop[a] - prop[b];
    const ComplexMatrix asym = 2.0 * plus_i - prop[a] - prop[b];
    out[d * a + b] = 0.5 * (sym + kI * asym);
    out[d * b + a] = out[d * a + b].adjoint();
  }
  return out;
}

QubitChannel embedded_channel(LindbladGenerator gen, TimeGrid grid, std::vector<int> levels,
                              PropagationOptions opts) {
  for (int l : levels)
    if (l < 0 || l >= gen.dim) throw PreconditionError("embedded_channel: level outside the system");
  return [gen = std::move(gen), grid, levels = std::move(levels), opts](const DensityMatrix& rho) {
    const int d = static_cast<int>(levels.size());
    if (rho.dim() != d) throw PreconditionError("embedded_channel: input dimension mismatch");
    ComplexMatrix full = ComplexMatrix::Zero(gen.dim, gen.dim);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) full(levels[i], levels[j]) = rho(i, j);
    const DensityMatrix out = propagate_final(gen, DensityMatrix(full), grid, opts);
    ComplexMatrix sub(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) sub(i, j) = out(levels[i], levels[j]);
    return sub;
  };
}

ProcessMatrix qpt_single(const std::vector<ComplexMatrix>& outputs) {
  check_outputs(outputs, 2);
  const ComplexMatrix l = lambda1();
  return {1, l * block_outputs(outputs, 2) * l};
}

ProcessMatrix qpt_two(const std::vector<ComplexMatrix>& outputs) {
  check_outputs(outputs, 4);
  const ComplexMatrix l = kron(lambda1(), lambda1());
  // Reorders (j1 j2 a1 a2) -> (j1 a1 j2 a2).
  Eigen::PermutationMatrix<16> perm;
  for (int j1 = 0; j1 < 2; ++j1)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) perm.indices()[8 * j1 + 4 * a1 + 2 * j2 + a2] = 8 * j1 + 4 * j2 + 2 * a1 + a2;
  const ComplexMatrix p = perm.toDenseMatrix().cast<Complex>();
  const ComplexMatrix rbar = p.transpose() * block_outputs(outputs, 4) * p;
  return {2, l * rbar * l};
}

ProcessMatrix qpt_linear_inversion(const std::vector<ComplexMatrix>& outputs, int n_qubits) {
  const int d = 1 << n_qubits;
  check_outputs(outputs, d);
  const auto basis = process_basis(n_qubits);
  const int nb = d * d;
  ComplexMatrix a(nb * nb, nb * nb);
  Eigen::VectorXcd rhs(nb * nb);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const ComplexMatrix in = ket_bra(d, j, k);
      const int block = (d * j + k) * nb;
      for (int m = 0; m < nb; ++m)
        for (int n = 0; n < nb; ++n) {
          const ComplexMatrix term = basis[m] * in * basis[n].adjoint();
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) a(block + d * r + c, nb * m + n) = term(r, c);
        }
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) rhs(block + d * r + c) = outputs[d * j + k](r, c);
    }
  const Eigen::VectorXcd x = a.fullPivLu().solve(rhs);
  ProcessMatrix p{n_qubits, ComplexMatrix(nb, nb)};
  for (int m = 0; m < nb; ++m)
    for (int n = 0; n < nb; ++n) p.chi(m, n) = x(nb * m + n);
  return p;
}

ComplexMatrix apply_chi(const ProcessMatrix& p, const ComplexMatrix& rho) {
  const auto basis = process_basis(p.n_qubits);
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t m = 0; m < basis.size(); ++m)
    for (std::size_t n = 0; n < basis.size(); ++n) {
      const Complex c = p.chi(m, n);
      if (c != Complex(0.0)) out += c * basis[m] * rho * basis[n].adjoint();
    }
  return out;
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& g : k) out += g * rho * g.adjoint();
  return out;
}

KrausSet kraus_from_chi(const ProcessMatrix& p) {
  if (hermiticity_defect(p.chi) > 1e-8 * std::max(1.0, max_abs(p.chi)))
    throw PreconditionError("kraus_from_chi: chi is not Hermitian");
  const ComplexMatrix herm = 0.5 * (p.chi + p.chi.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  const auto basis = process_basis(p.n_qubits);
  KrausSet out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double v = es.eigenvalues()(k);
    if (v < -1e-4) throw NonPhysicalError("kraus_from_chi: chi has a large negative eigenvalue");
    if (v < -1e-6) {
      log_warn("kraus_from_chi: clipping negative chi eigenvalue " + std::to_string(v));
      v = 0.0;
    }
    if (v < 1e-10) continue;
    ComplexMatrix g = ComplexMatrix::Zero(basis[0].rows(), basis[0].cols());
    for (std::size_t m = 0; m < basis.size(); ++m) g += es.eigenvectors()(m, k) * basis[m];
    out.push_back(std::sqrt(v) * g);
  }
  return out;
}

double avg_gate_fidelity(const KrausSet& kraus, const ComplexMatrix& target) {
  const double n = static_cast<double>(target.rows());
  double s = 0.0;
  for (const auto& g : kraus) {
    if (g.rows() != target.rows()) throw PreconditionError("avg_gate_fidelity: dimension mismatch");
    const ComplexMatrix m = target.adjoint() * g;
    s += (m * m.adjoint()).trace().real() + std::norm(m.trace());
  }
  return s / (n * (n + 1.0));
}

GateReport characterize_gate(const QubitChannel& channel, int n_qubits, const ComplexMatrix& target, int threads) {
  const auto outputs = simulate_process(channel, n_qubits, threads);
  GateReport r;
  r.process = n_qubits == 1 ? qpt_single(outputs) : qpt_two(outputs);
  r.kraus = kraus_from_chi(r.process);
  r.fidelity = avg_gate_fidelity(r.kraus, target);
  return r;
}

ComplexMatrix hadamard_unitary() { return (pauli_x() + pauli_z()) / std::sqrt(2.0); }

ComplexMatrix cz_unitary() {
  ComplexMatrix u = identity(4);
  u(3, 3) = -1.0;
  return u;
}

nlohmann::json to_json(const ProcessMatrix& p) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.chi.rows(); ++i) {
    std::vector<double> rr, ii;
    for (Eigen::Index j = 0; j < p.chi.cols(); ++j) {
      rr.push_back(p.chi(i, j).real());
      ii.push_back(p.chi(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"n_qubits", p.n_qubits},
          {"basis", p.n_qubits == 1 ? "I,X,-iY,Z" : "kron(I,X,-iY,Z)^2, index 4*m1+m2"},
          {"note", "third basis element is -i*sigma_y, so chi phases differ from the sigma_y convention"},
          {"re", re},
          {"im", im}};
}

void write_chi_csv(std::ostream& out, const ProcessMatrix& p, bool imaginary) {
  static const char* names[] = {"I", "X", "-iY", "Z"};
  auto label = [&](Eigen::Index m) {
    return p.n_qubits == 1 ? std::string(names[m]) : std::string(names[m / 4]) + std::string(names[m % 4]);
  };
  out << (imaginary ? "im" : "re");
  for (Eigen::Index j = 0; j < p.chi.cols(); ++j) out << ',' << label(j);
  out << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < p.chi.rows(); ++i) {
    out << label(i);
    for (Eigen::Index j = 0; j < p.chi.cols(); ++j) out << ',' << (imaginary ? p.chi(i, j).imag() : p.chi(i, j).real());
    out << '\n';
  }
}

}  // namespace igates
