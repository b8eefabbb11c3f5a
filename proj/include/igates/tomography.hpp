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
#include <vector>

#include "json.hpp"

#include "igates/linops.hpp"

namespace igates {

// Chi matrix in the operator basis {I, sx, -i sy, sz} (Kronecker squares for two qubits,
// index 4 m1 + m2).
struct ProcessMatrix {
  int n_qubits = 1;
  ComplexMatrix chi;
};

using KrausSet = std::vector<ComplexMatrix>;

/// Qubit-space input density matrix -> qubit-space output (possibly sub-normalized by leakage).
using QubitChannel = std::function<ComplexMatrix(const DensityMatrix&)>;

std::vector<ComplexMatrix> process_basis(int n_qubits);

/// Outputs for the operator inputs |J><K|, ordered J-major (index 2^n J + K).
/// Off-diagonal inputs are assembled from propagated pure states.
std::vector<ComplexMatrix> simulate_process(const QubitChannel& channel, int n_qubits, int threads = 1);

/// Channel realized by Lindblad propagation on a larger space; qubit basis state i sits on level levels[i].
QubitChannel embedded_channel(LindbladGenerator gen, TimeGrid grid, std::vector<int> levels,
                              PropagationOptions opts = {});

ProcessMatrix qpt_single(const std::vector<ComplexMatrix>& outputs);
ProcessMatrix qpt_two(const std::vector<ComplexMatrix>& outputs);
/// Reference reconstruction by solving the linear system for chi directly.
ProcessMatrix qpt_linear_inversion(const std::vector<ComplexMatrix>& outputs, int n_qubits);

ComplexMatrix apply_chi(const ProcessMatrix& p, const ComplexMatrix& rho);
ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho);

KrausSet kraus_from_chi(const ProcessMatrix& p);

double avg_gate_fidelity(const KrausSet& kraus, const ComplexMatrix& target);

struct GateReport {
  ProcessMatrix process;
  KrausSet kraus;
  double fidelity = 0.0;
};

GateReport characterize_gate(const QubitChannel& channel, int n_qubits, const ComplexMatrix& target, int threads = 1);

ComplexMatrix hadamard_unitary();
ComplexMatrix cz_unitary();

nlohmann::json to_json(const ProcessMatrix& p);
/// Heatmap grid of Re(chi) or Im(chi), one row per matrix row, basis labels as headers.
void write_chi_csv(std::ostream& out, const ProcessMatrix& p, bool imaginary = false);

}  // namespace igates
