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

#include "igates/banded.hpp"

#include <algorithm>
#include <cmath>

#include "igates/errors.hpp"

namespace igates {

void CostWeights::check() const {
  if (!(lambda1 > 0.0)) throw ConfigError("cost weights: lambda1 must be positive");
  if (lambda2 < 0.0 || lambda3 < 0.0) throw ConfigError("cost weights: lambda2, lambda3 must be non-negative");
}

double BandedSystem::at(std::size_t i, std::size_t j) const {
  const long off = static_cast<long>(j) - static_cast<long>(i);
  if (off < -2 || off > 2) return 0.0;
  return band[off + 2][i];
}

std::vector<double> BandedSystem::multiply(std::span<const double> x) const {
  if (x.size() != n) throw PreconditionError("BandedSystem::multiply: size mismatch");
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
      const long j = static_cast<long>(i) + k - 2;
      if (j >= 0 && j < static_cast<long>(n)) s += band[k][i] * x[j];
    }
    y[i] = s;
  }
  return y;
}

Eigen::MatrixXd BandedSystem::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < 5; ++k) {
      const long j = static_cast<long>(i) + k - 2;
      if (j >= 0 && j < static_cast<long>(n)) m(i, j) = band[k][i];
    }
  return m;
}

BandedSystem assemble_banded(const CostWeights& w, const TimeGrid& grid) {
  w.check();
  const std::size_t n = grid.size();
  if (n < 5) throw PreconditionError("assemble_banded: need at least 5 samples");
  const double dt = grid.dt();
  const double c2 = w.lambda2 / (dt * dt);
  const double c4 = w.lambda3 / (dt * dt * dt * dt);
  // -l1 [1] + l2 [1 -2 1]/dt^2 - l3 [1 -4 6 -4 1]/dt^4
  const std::array<double, 5> stencil = {-c4, c2 + 4.0 * c4, -w.lambda1 - 2.0 * c2 - 6.0 * c4, c2 + 4.0 * c4, -c4};
  BandedSystem a;
  a.n = n;
  for (auto& b : a.band) b.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    for (int k = 0; k < 5; ++k) {
      const long j = static_cast<long>(i) + k - 2;
      // Columns of the pinned end points are dropped: their unknowns are zero.
      if (j <= 0 || j >= static_cast<long>(n) - 1) continue;
      a.band[k][i] = stencil[k];
    }
  }
  a.band[2][0] = 1.0;
  a.band[2][n - 1] = 1.0;
  return a;
}

BandedLU::BandedLU(const BandedSystem& a) : a_(&a), n_(a.n) {
  const std::size_t n = n_;
  l1_.assign(n, 0.0);
  l2_.assign(n, 0.0);
  u0_.assign(n, 0.0);
  u1_.assign(n, 0.0);
  u2_.assign(n, 0.0);
  double scale = 0.0;
  for (const auto& b : a.band)
    for (double v : b) scale = std::max(scale, std::abs(v));
  auto widen = [](const std::vector<double>& v) { return std::vector<Real>(v.begin(), v.end()); };
  // Working rows: d = A(i,i), e = A(i,i+1), f = A(i,i+2), b1 = A(i,i-1), b2 = A(i,i-2).
  auto d = widen(a.band[2]), e = widen(a.band[3]), f = widen(a.band[4]), b1 = widen(a.band[1]),
       b2 = widen(a.band[0]);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i]) < 1e-14L * scale) throw ConfigError("banded update system is singular: check cost weights");
    u0_[i] = d[i];
    u1_[i] = i + 1 < n ? e[i] : 0.0L;
    u2_[i] = i + 2 < n ? f[i] : 0.0L;
    if (i + 1 < n) {
      const Real m = b1[i + 1] / d[i];
      l1_[i] = m;
      d[i + 1] -= m * u1_[i];
      if (i + 2 < n) e[i + 1] -= m * u2_[i];
    }
    if (i + 2 < n) {
      const Real m = b2[i + 2] / d[i];
      l2_[i] = m;
      b1[i + 2] -= m * u1_[i];
      d[i + 2] -= m * u2_[i];
    }
  }
}

std::vector<BandedLU::Real> BandedLU::raw_solve(std::vector<Real> y) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) y[i + 1] -= l1_[i] * y[i];
    if (i + 2 < n) y[i + 2] -= l2_[i] * y[i];
  }
  for (std::size_t k = n; k-- > 0;) {
    Real s = y[k];
    if (k + 1 < n) s -= u1_[k] * y[k + 1];
    if (k + 2 < n) s -= u2_[k] * y[k + 2];
    y[k] = s / u0_[k];
  }
  return y;
}

std::vector<double> BandedLU::solve(std::span<const double> f, double* residual) const {
  if (f.size() != n_) throw PreconditionError("solve_banded: size mismatch");
  std::vector<Real> rhs(f.begin(), f.end());
  rhs.front() = 0.0L;
  rhs.back() = 0.0L;
  auto resid = [&](const std::vector<Real>& x) {
    std::vector<Real> r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Real s = rhs[i];
      for (int k = 0; k < 5; ++k) {
        const long j = static_cast<long>(i) + k - 2;
        if (j >= 0 && j < static_cast<long>(n_)) s -= static_cast<Real>(a_->band[k][i]) * x[j];
      }
      r[i] = s;
    }
    return r;
  };
  Real den = 0.0L;
  for (const Real v : rhs) den = std::max(den, std::abs(v));
  auto rel = [&](const std::vector<Real>& r) {
    Real num = 0.0L;
    for (const Real v : r) num = std::max(num, std::abs(v));
    return den > 0.0L ? num / den : num;
  };
  std::vector<Real> x = raw_solve(rhs);
  auto r = resid(x);
  Real err = rel(r);
  // Refinement sweeps; stiff acceleration weights need more than one.
  for (int sweep = 0; sweep < 4 && err > 1e-13L; ++sweep) {
    const auto dx = raw_solve(r);
    std::vector<Real> y = x;
    for (std::size_t i = 0; i < n_; ++i) y[i] += dx[i];
    y.front() = 0.0L;
    y.back() = 0.0L;
    auto ry = resid(y);
    const Real ey = rel(ry);
    if (!(ey < err)) break;
    x = std::move(y);
    r = std::move(ry);
    err = ey;
  }
  if (residual) *residual = static_cast<double>(err);
  return {x.begin(), x.end()};
}

std::vector<double> solve_banded(const BandedSystem& a, std::span<const double> f) { return BandedLU(a).solve(f); }

double banded_residual(const BandedSystem& a, std::span<const double> x, std::span<const double> f) {
  std::vector<double> rhs(f.begin(), f.end());
  rhs.front() = 0.0;
  rhs.back() = 0.0;
  const auto ax = a.multiply(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    num = std::max(num, std::abs(ax[i] - rhs[i]));
    den = std::max(den, std::abs(rhs[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace igates
