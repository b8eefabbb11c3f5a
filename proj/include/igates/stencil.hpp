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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace igates {

// Finite-difference stencils shared by every derivative-based diagnostic:
// central differences in the interior, one-sided second-order at the edges.

template <class T>
std::vector<T> first_derivative(std::span<const T> f, double dt) {
  const std::size_t n = f.size();
  if (n < 3) throw std::invalid_argument("first_derivative needs at least 3 samples");
  std::vector<T> d(n);
  const double inv = 1.0 / (2.0 * dt);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv;
  return d;
}

template <class T>
std::vector<T> second_derivative(std::span<const T> f, double dt) {
  const std::size_t n = f.size();
  if (n < 4) throw std::invalid_argument("second_derivative needs at least 4 samples");
  std::vector<T> d(n);
  const double inv = 1.0 / (dt * dt);
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
  return d;
}

/// Three-point derivative on a non-uniform abscissa x (second order everywhere).
template <class T>
std::vector<T> first_derivative_nonuniform(std::span<const T> f, std::span<const double> x) {
  const std::size_t n = f.size();
  if (n < 3 || x.size() != n) throw std::invalid_argument("first_derivative_nonuniform: bad sizes");
  std::vector<T> d(n);
  auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
    const double xa = x[a], xb = x[b], xc = x[c];
    const double wa = (2.0 * at - xb - xc) / ((xa - xb) * (xa - xc));
    const double wb = (2.0 * at - xa - xc) / ((xb - xa) * (xb - xc));
    const double wc = (2.0 * at - xa - xb) / ((xc - xa) * (xc - xb));
    return T(wa * f[a] + wb * f[b] + wc * f[c]);
  };
  d[0] = three_point(0, 1, 2, x[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = three_point(i - 1, i, i + 1, x[i]);
  d[n - 1] = three_point(n - 3, n - 2, n - 1, x[n - 1]);
  return d;
}

}  // namespace igates
