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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace igates {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform sampling of [t0, tf] with n points (n >= 3).
class TimeGrid {
 public:
  TimeGrid(double t0, double tf, std::size_t n);

  double t0() const { return t0_; }
  double tf() const { return tf_; }
  double duration() const { return tf_ - t0_; }
  std::size_t size() const { return n_; }
  double dt() const { return (tf_ - t0_) / static_cast<double>(n_ - 1); }
  double at(std::size_t i) const;
  std::vector<double> times() const;

  bool operator==(const TimeGrid&) const = default;

 private:
  double t0_;
  double tf_;
  std::size_t n_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// The public constructor validates all three invariants (trace within 1e-8,
/// Hermiticity within 1e-10, eigenvalues >= -1e-8). States produced by the
/// propagator are already checked step by step and skip the eigenvalue test.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis(int dim, int k);
  static DensityMatrix maximally_mixed(int dim);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double population(int k) const { return m_(k, k).real(); }
  double trace() const { return m_.trace().real(); }
  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  friend class DensityTrajectoryBuilder;

  ComplexMatrix m_;
};

/// Time-dependent Lindblad generator. Jump operators carry sqrt(rate).
struct LindbladGenerator {
  int dim = 0;
  std::function<ComplexMatrix(double)> hamiltonian;
  std::vector<ComplexMatrix> jumps;

  /// Throws PreconditionError when a jump has the wrong shape.
  void check() const;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns, gauge-fixed
};

/// Eigen-decomposition of a Hermitian matrix with a deterministic gauge: each
/// eigenvector's largest-magnitude entry (lowest row on ties) is real positive.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(rho_target * rho_final) for a pure target.
double state_fidelity(const DensityMatrix& rho_final, const DensityMatrix& rho_target);

struct PropagationOptions {
  int renormalize_every = 100;
  double trace_tolerance = 1e-6;
};

/// Fixed-step RK4 integration of the master equation; element i is the state at grid.at(i).
std::vector<DensityMatrix> propagate_lindblad(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                              const TimeGrid& grid, const PropagationOptions& opts = {});

/// Same integration, keeping only the final state.
DensityMatrix propagate_final(const LindbladGenerator& gen, const DensityMatrix& rho0, const TimeGrid& grid,
                              const PropagationOptions& opts = {});

/// Integrates d(xi)/dt = -L^dagger(xi) backwards from xi(tf) = terminal.
/// Element i of the result is the costate at grid.at(i).
std::vector<ComplexMatrix> propagate_adjoint(const LindbladGenerator& gen, const ComplexMatrix& terminal,
                                             const TimeGrid& grid);

/// Right-hand side of the master equation and its adjoint, with jumps stored sparsely.
class LindbladKernel {
 public:
  explicit LindbladKernel(const LindbladGenerator& gen);

  /// out = -i[H, rho] + sum_k (L rho L^dag - 1/2 {L^dag L, rho})
  void apply(const ComplexMatrix& h, const ComplexMatrix& rho, ComplexMatrix& out) const;
  /// out = i[H, xi] + sum_k (L^dag xi L - 1/2 {L^dag L, xi})
  void apply_adjoint(const ComplexMatrix& h, const ComplexMatrix& xi, ComplexMatrix& out) const;

  int dim() const { return dim_; }

 private:
  struct Entry {
    int row;
    int col;
    Complex value;
  };
  void left_right(const ComplexMatrix& a, const ComplexMatrix& x, ComplexMatrix& out) const;

  int dim_;
  ComplexMatrix half_jump_sum_;  // 1/2 sum L^dag L
  std::vector<std::vector<Entry>> jumps_;
};

// Small operator helpers.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity(int dim);
ComplexVector basis_ket(int dim, int k);
/// |i><j| in dimension dim.
ComplexMatrix ket_bra(int dim, int i, int j);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_ij |a_ij|
double max_abs(const ComplexMatrix& a);
double hermiticity_defect(const ComplexMatrix& a);

/// Trapezoidal integral of uniformly sampled values.
double trapezoid(std::span<const double> values, double dt);

}  // namespace igates
