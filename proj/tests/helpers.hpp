// Copyright 2026 The ghzw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "ghzw/ghzw.hpp"

namespace testing_helpers {

using ghzw::ComplexMatrix;
using ghzw::cplx;

inline ComplexMatrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> n;
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) z = {n(gen), n(gen)};
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& gen, std::size_t d) {
  const ComplexMatrix g = random_matrix(gen, d, d);
  ComplexMatrix h = (g + g.adjoint()) * 0.5;
  return h * (1.0 / ghzw::frobenius_norm(h));
}

// Random 2x2 matrix rescaled to determinant 1.
inline ComplexMatrix random_sl2(std::mt19937_64& gen) {
  ComplexMatrix a = random_matrix(gen, 2, 2);
  return a * (1.0 / std::sqrt(ghzw::det2(a)));
}

// Random SU(2) element from a normalized quaternion.
inline ComplexMatrix random_su2(std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  double q[4];
  double s = 0.0;
  for (double& v : q) {
    v = n(gen);
    s += v * v;
  }
  s = std::sqrt(s);
  const cplx a{q[0] / s, q[1] / s}, b{q[2] / s, q[3] / s};
  return {{a, -std::conj(b)}, {b, std::conj(a)}};
}

inline ComplexMatrix local_product(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix out = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) out = ghzw::tensor(out, ops[i]);
  return out;
}

inline std::vector<cplx> apply(const ComplexMatrix& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace testing_helpers
