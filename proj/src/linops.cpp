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

#include "igates/linops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "igates/errors.hpp"
#include "igates/log.hpp"

namespace igates {

TimeGrid::TimeGrid(double t0, double tf, std::size_t n) : t0_(t0), tf_(tf), n_(n) {
  if (n < 3) throw PreconditionError("TimeGrid needs at least 3 samples");
  if (!(tf > t0) || !std::isfinite(t0) || !std::isfinite(tf))
    throw PreconditionError("TimeGrid needs finite t0 < tf");
}

double TimeGrid::at(std::size_t i) const {
  if (i + 1 == n_) return tf_;
  return t0_ + dt() * static_cast<double>(i);
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(n_);
  for (std::size_t i = 0; i < n_; ++i) t[i] = at(i);
  return t;
}

// ---------------------------------------------------------------------------

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const ComplexMatrix& a) { return max_abs(a - a.adjoint()); }

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) throw PreconditionError("density matrix must be square");
  if (std::abs(m_.trace() - Complex(1.0)) > 1e-8) throw PreconditionError("density matrix trace differs from 1");
  if (hermiticity_defect(m_) > 1e-10) throw PreconditionError("density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) throw PreconditionError("density matrix is not positive");
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw PreconditionError("pure state from zero vector");
  const ComplexVector v = psi / norm;
  ComplexMatrix m = v * v.adjoint();
  return DensityMatrix(std::move(m), Trusted{});
}

DensityMatrix DensityMatrix::basis(int dim, int k) { return pure(basis_ket(dim, k)); }

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), Trusted{});
}

double DensityMatrix::purity() const { return m_.cwiseAbs2().sum(); }

class DensityTrajectoryBuilder {
 public:
  static DensityMatrix make(ComplexMatrix m) { return DensityMatrix(std::move(m), DensityMatrix::Trusted{}); }
};

void LindbladGenerator::check() const {
  if (dim < 1) throw PreconditionError("generator dimension must be positive");
  if (!hamiltonian) throw PreconditionError("generator has no Hamiltonian");
  for (const auto& l : jumps) {
    if (l.rows() != dim || l.cols() != dim) throw PreconditionError("jump operator dimension mismatch");
  }
}

// ---------------------------------------------------------------------------

EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw PreconditionError("eig_hermitian: matrix not square");
  const double scale = max_abs(h);
  if (hermiticity_defect(h) > 1e-12 * scale)
    throw PreconditionError("eig_hermitian: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver failed");

  EigenDecomposition out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  out.vectors = es.eigenvectors();
  const Eigen::Index n = h.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index best = 0;
    double best_abs = std::abs(out.vectors(0, c));
    for (Eigen::Index r = 1; r < n; ++r) {
      const double a = std::abs(out.vectors(r, c));
      if (a > best_abs * (1.0 + 1e-12)) {
        best = r;
        best_abs = a;
      }
    }
    const Complex phase = std::conj(out.vectors(best, c)) / best_abs;
    out.vectors.col(c) *= phase;
    out.vectors(best, c) = Complex(out.vectors(best, c).real(), 0.0);
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double state_fidelity(const DensityMatrix& rho_final, const DensityMatrix& rho_target) {
  if (rho_final.dim() != rho_target.dim()) throw PreconditionError("state_fidelity: dimension mismatch");
  if (std::abs(rho_target.purity() - 1.0) > 1e-8) throw PreconditionError("state_fidelity: target is not pure");
  const double f = (rho_target.matrix() * rho_final.matrix()).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

// ---------------------------------------------------------------------------

LindbladKernel::LindbladKernel(const LindbladGenerator& gen) : dim_(gen.dim) {
  gen.check();
  half_jump_sum_ = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& l : gen.jumps) {
    half_jump_sum_ += 0.5 * l.adjoint() * l;
    std::vector<Entry> entries;
    for (int c = 0; c < dim_; ++c)
      for (int r = 0; r < dim_; ++r)
        if (l(r, c) != Complex(0.0)) entries.push_back({r, c, l(r, c)});
    if (!entries.empty()) jumps_.push_back(std::move(entries));
  }
}

// out = A x + x A^dag with A sparse-scanned; both products cost nnz(A) * dim.
void LindbladKernel::left_right(const ComplexMatrix& a, const ComplexMatrix& x, ComplexMatrix& out) const {
  const int d = dim_;
  out.setZero(d, d);
  const Complex* xp = x.data();
  Complex* op = out.data();
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      // (A x)(i, j) += a_ik x(k, j)
      for (int j = 0; j < d; ++j) op[i + j * d] += aik * xp[k + j * d];
      // (x A^dag)(j, i) += x(j, k) conj(a_ik)
      const Complex ca = std::conj(aik);
      for (int j = 0; j < d; ++j) op[j + i * d] += xp[j + k * d] * ca;
    }
  }
}

void LindbladKernel::apply(const ComplexMatrix& h, const ComplexMatrix& rho, ComplexMatrix& out) const {
  const ComplexMatrix a = -kI * h - half_jump_sum_;
  left_right(a, rho, out);
  const int d = dim_;
  const Complex* rp = rho.data();
  Complex* op = out.data();
  for (const auto& l : jumps_) {
    for (const auto& e1 : l)
      for (const auto& e2 : l) op[e1.row + e2.row * d] += e1.value * rp[e1.col + e2.col * d] * std::conj(e2.value);
  }
}

void LindbladKernel::apply_adjoint(const ComplexMatrix& h, const ComplexMatrix& xi, ComplexMatrix& out) const {
  const ComplexMatrix b = kI * h - half_jump_sum_;
  left_right(b, xi, out);
  const int d = dim_;
  const Complex* xp = xi.data();
  Complex* op = out.data();
  for (const auto& l : jumps_) {
    for (const auto& e1 : l)
      for (const auto& e2 : l) op[e1.col + e2.col * d] += std::conj(e1.value) * xp[e1.row + e2.row * d] * e2.value;
  }
}

namespace {

// One RK4 step of y' = f(t, y) with signed step h; h_now/h_mid/h_next are the
// Hamiltonians at t, t + h/2, t + h.
template <class Rhs>
void rk4_step(const Rhs& rhs, const ComplexMatrix& h_now, const ComplexMatrix& h_mid, const ComplexMatrix& h_next,
              double h, ComplexMatrix& y, ComplexMatrix* work) {
  ComplexMatrix& k1 = work[0];
  ComplexMatrix& k2 = work[1];
  ComplexMatrix& k3 = work[2];
  ComplexMatrix& k4 = work[3];
  ComplexMatrix& tmp = work[4];
  rhs(h_now, y, k1);
  tmp = y + (0.5 * h) * k1;
  rhs(h_mid, tmp, k2);
  tmp = y + (0.5 * h) * k2;
  rhs(h_mid, tmp, k3);
  tmp = y + h * k3;
  rhs(h_next, tmp, k4);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class Observer>
ComplexMatrix integrate_density(const LindbladGenerator& gen, const DensityMatrix& rho0, const TimeGrid& grid,
                                const PropagationOptions& opts, Observer&& observe) {
  if (rho0.dim() != gen.dim) throw PreconditionError("propagate_lindblad: state/generator dimension mismatch");
  const LindbladKernel kernel(gen);
  auto rhs = [&kernel](const ComplexMatrix& h, const ComplexMatrix& x, ComplexMatrix& out) { kernel.apply(h, x, out); };

  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix work[5];
  const double dt = grid.dt();
  ComplexMatrix h_now = gen.hamiltonian(grid.at(0));
  observe(std::size_t{0}, rho);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double t = grid.at(i);
    const ComplexMatrix h_mid = gen.hamiltonian(t + 0.5 * dt);
    ComplexMatrix h_next = gen.hamiltonian(grid.at(i + 1));
    rk4_step(rhs, h_now, h_mid, h_next, dt, rho, work);
    h_now = std::move(h_next);

    const double tr = rho.trace().real();
    const double purity = rho.cwiseAbs2().sum();
    if (std::abs(tr - 1.0) > opts.trace_tolerance || !(purity <= 1.0 + opts.trace_tolerance)) {
      std::ostringstream msg;
      msg << "integrator step too large: state left the physical set at t = " << grid.at(i + 1)
          << " (trace " << tr << ", purity " << purity << ")";
      throw StepSizeError(msg.str(), grid.at(i + 1));
    }
    if (opts.renormalize_every > 0 && (i + 1) % static_cast<std::size_t>(opts.renormalize_every) == 0) {
      ComplexMatrix fixed = 0.5 * (rho + rho.adjoint());
      fixed /= fixed.trace().real();
      const double correction = max_abs(fixed - rho);
      if (correction > 1e-9) {
        std::ostringstream msg;
        msg << "re-symmetrized density matrix at t = " << grid.at(i + 1) << ", correction " << correction;
        log_info(msg.str());
      }
      rho = std::move(fixed);
    }
    observe(i + 1, rho);
  }
  return rho;
}

}  // namespace

std::vector<DensityMatrix> propagate_lindblad(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                              const TimeGrid& grid, const PropagationOptions& opts) {
  std::vector<DensityMatrix> out;
  out.reserve(grid.size());
  integrate_density(gen, rho0, grid, opts,
                    [&out](std::size_t, const ComplexMatrix& m) { out.push_back(DensityTrajectoryBuilder::make(m)); });
  return out;
}

DensityMatrix propagate_final(const LindbladGenerator& gen, const DensityMatrix& rho0, const TimeGrid& grid,
                              const PropagationOptions& opts) {
  return DensityTrajectoryBuilder::make(
      integrate_density(gen, rho0, grid, opts, [](std::size_t, const ComplexMatrix&) {}));
}

std::vector<ComplexMatrix> propagate_adjoint(const LindbladGenerator& gen, const ComplexMatrix& terminal,
                                             const TimeGrid& grid) {
  if (terminal.rows() != gen.dim || terminal.cols() != gen.dim)
    throw PreconditionError("propagate_adjoint: terminal dimension mismatch");
  const LindbladKernel kernel(gen);
  // d(xi)/dt = -L^dag(xi)
  auto rhs = [&kernel](const ComplexMatrix& h, const ComplexMatrix& x, ComplexMatrix& out) {
    kernel.apply_adjoint(h, x, out);
    out = -out;
  };
  const std::size_t n = grid.size();
  std::vector<ComplexMatrix> out(n);
  ComplexMatrix xi = terminal;
  out[n - 1] = xi;
  ComplexMatrix work[5];
  const double dt = grid.dt();
  ComplexMatrix h_now = gen.hamiltonian(grid.at(n - 1));
  for (std::size_t i = n - 1; i > 0; --i) {
    const double t = grid.at(i);
    const ComplexMatrix h_mid = gen.hamiltonian(t - 0.5 * dt);
    ComplexMatrix h_next = gen.hamiltonian(grid.at(i - 1));
    rk4_step(rhs, h_now, h_mid, h_next, -dt, xi, work);
    h_now = std::move(h_next);
    out[i - 1] = xi;
  }
  return out;
}

// ---------------------------------------------------------------------------

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexVector basis_ket(int dim, int k) {
  if (k < 0 || k >= dim) throw PreconditionError("basis_ket: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

ComplexMatrix ket_bra(int dim, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double trapezoid(std::span<const double> values, double dt) {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return s * dt;
}

}  // namespace igates
