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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "igates/linops.hpp"

namespace igates {

struct CostWeights {
  double lambda1 = 0.1;  // power
  double lambda2 = 0.0;  // velocity
  double lambda3 = 0.0;  // acceleration

  void check() const;
};

// Symmetric pentadiagonal operator -l1 I + l2 D2 - l3 D4 with the end rows pinned to the identity.
// band[k][i] holds A(i, i + k - 2).
struct BandedSystem {
  std::size_t n = 0;
  std::array<std::vector<double>, 5> band;

  double at(std::size_t i, std::size_t j) const;
  std::vector<double> multiply(std::span<const double> x) const;
  Eigen::MatrixXd dense() const;
};

BandedSystem assemble_banded(const CostWeights& w, const TimeGrid& grid);

/// Solves A x = f with f's end entries replaced by zero; throws ConfigError on a vanishing pivot.
std::vector<double> solve_banded(const BandedSystem& a, std::span<const double> f);

/// max |A x - f| / max |f| with the pinned end entries of f taken as zero.
double banded_residual(const BandedSystem& a, std::span<const double> x, std::span<const double> f);

// Factorization reused across many right-hand sides.
class BandedLU {
 public:
  explicit BandedLU(const BandedSystem& a);
  /// Factorization and substitution run in extended precision. When `residual` is given it receives
  /// max |A x - f| / max |f| evaluated on the extended-precision solution.
  std::vector<double> solve(std::span<const double> f, double* residual = nullptr) const;

 private:
  using Real = long double;
  std::vector<Real> raw_solve(std::vector<Real> y) const;

  const BandedSystem* a_;
  std::size_t n_;
  std::vector<Real> l1_, l2_;      // multipliers for rows i+1, i+2
  std::vector<Real> u0_, u1_, u2_;  // U(i,i), U(i,i+1), U(i,i+2)
};

}  // namespace igates
