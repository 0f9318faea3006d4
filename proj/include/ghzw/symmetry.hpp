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

// GHZ symmetry: correlated z rotations, simultaneous spin flips and qubit
// permutations. The twirl projects any state onto the two-parameter family of
// states invariant under that group, which is located by triangle coordinates.

#pragma once

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/numerics.hpp"
#include "ghzw/states.hpp"

namespace ghzw {

inline constexpr double kTriangleSlack = 1e-9;

struct SymCoords {
  double x = 0.0;  // off-diagonal corner coordinate
  double y = 0.0;  // shifted corner population
  int nqubits = 3;
};

// Vertices of the triangle of GHZ-symmetric states: the GHZ+- corners at
// (+-1/2, top) and the lower corner at (0, bottom).
struct Triangle {
  double top;
  double bottom;
};

inline Triangle triangle(int nqubits) {
  if (nqubits == 3) return {std::sqrt(3.0) / 4.0, -std::sqrt(3.0) / 12.0};
  if (nqubits == 2) return {std::numbers::sqrt2 / 4.0, -std::numbers::sqrt2 / 4.0};
  throw InvalidInput("GHZ symmetry is implemented for 2 and 3 qubits only");
}

inline bool in_triangle(const SymCoords& c, double slack = kTriangleSlack) {
  const Triangle t = triangle(c.nqubits);
  // Barycentric weights with respect to (-1/2, top), (1/2, top), (0, bottom).
  const double h = t.top - t.bottom;
  const double w_bottom = (t.top - c.y) / h;
  const double w_right = c.x + 0.5 * (1.0 - w_bottom);
  const double w_left = 1.0 - w_bottom - w_right;
  return w_bottom >= -slack && w_right >= -slack && w_left >= -slack;
}

// Coordinates from the three matrix elements they depend on.
inline SymCoords coords_from_elements(int nqubits, double first_diag, double last_diag,
                                      double corner_re) {
  SymCoords c{.x = corner_re, .y = 0.0, .nqubits = nqubits};
  if (nqubits == 3)
    c.y = (first_diag + last_diag - 0.25) / std::sqrt(3.0);
  else
    c.y = (first_diag + last_diag - 0.5) / std::numbers::sqrt2;
  return c;
}

inline SymCoords coords(const DensityMatrix& rho) {
  if (!rho.normalized()) throw InvalidInput("coords: state must be normalized");
  const std::size_t k = rho.corner();
  const double x = 0.5 * (rho(0, k).real() + rho(k, 0).real());
  return coords_from_elements(rho.nqubits(), rho(0, 0).real(), rho(k, k).real(), x);
}

// Closed-form group average. The z rotations kill every off-diagonal element
// except the |0..0><1..1| corner pair; flips equalize the two corner
// populations and replace the corner pair by its real part; permutations plus
// flips equalize the remaining populations, which form a single orbit.
inline DensityMatrix twirl(const DensityMatrix& rho) {
  if (!rho.normalized()) throw InvalidInput("twirl: state must be normalized");
  const std::size_t d = rho.dim();
  const std::size_t k = rho.corner();
  ComplexMatrix out(d, d);
  const double corner_pop = 0.5 * (rho(0, 0).real() + rho(k, k).real());
  const double corner_re = 0.5 * (rho(0, k).real() + rho(k, 0).real());
  double rest = 0.0;
  for (std::size_t i = 1; i < k; ++i) rest += rho(i, i).real();
  rest /= static_cast<double>(d - 2);
  out(0, 0) = out(k, k) = corner_pop;
  out(0, k) = out(k, 0) = corner_re;
  for (std::size_t i = 1; i < k; ++i) out(i, i) = rest;
  return DensityMatrix::trusted(std::move(out), true);
}

// The unique GHZ-symmetric state at the given coordinates.
inline DensityMatrix sym_state(int nqubits, const SymCoords& c) {
  if (c.nqubits != nqubits) throw InvalidInput("sym_state: coordinate qubit count mismatch");
  if (!in_triangle(c)) throw OutOfDomain("sym_state: coordinates lie outside the triangle");
  const std::size_t d = std::size_t{1} << nqubits;
  const double a = nqubits == 3 ? 0.5 * (std::sqrt(3.0) * c.y + 0.25)
                                : 0.5 * (std::numbers::sqrt2 * c.y + 0.5);
  const double rest = (1.0 - 2.0 * a) / static_cast<double>(d - 2);
  if (a - std::abs(c.x) < -kTriangleSlack || rest < -kTriangleSlack)
    throw OutOfDomain("sym_state: reconstruction is not positive semidefinite");
  ComplexMatrix m(d, d);
  m(0, 0) = m(d - 1, d - 1) = a;
  m(0, d - 1) = m(d - 1, 0) = c.x;
  for (std::size_t i = 1; i + 1 < d; ++i) m(i, i) = rest;
  return DensityMatrix::trusted(std::move(m), true);
}

// Element of the GHZ symmetry group: the state is rotated, then optionally
// flipped, then its qubits are permuted.
struct GroupElement {
  std::vector<double> angles;     // phi_1..phi_{N-1}; the last qubit gets -sum
  std::vector<int> permutation;   // qubit i moves to position permutation[i]
  bool flip = false;

  int nqubits() const { return static_cast<int>(permutation.size()); }
};

inline ComplexMatrix group_element(const GroupElement& g) {
  const int n = g.nqubits();
  if (n != 2 && n != 3) throw InvalidInput("group_element: 2 or 3 qubits required");
  if (static_cast<int>(g.angles.size()) != n - 1)
    throw InvalidInput("group_element: expected N-1 rotation angles");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int q : g.permutation) {
    if (q < 0 || q >= n || seen[static_cast<std::size_t>(q)]++)
      throw InvalidInput("group_element: not a permutation");
  }
  std::vector<double> phi = g.angles;
  phi.push_back(-std::accumulate(g.angles.begin(), g.angles.end(), 0.0));

  const std::size_t d = std::size_t{1} << n;
  const auto bit = [n](std::size_t b, int q) { return (b >> (n - 1 - q)) & 1u; };
  ComplexMatrix u(d, d);
  for (std::size_t b = 0; b < d; ++b) {
    // exp(i phi sigma_z) multiplies |0> by e^{i phi} and |1> by e^{-i phi}.
    double angle = 0.0;
    for (int q = 0; q < n; ++q) angle += bit(b, q) ? -phi[static_cast<std::size_t>(q)] : phi[static_cast<std::size_t>(q)];
    const std::size_t flipped = g.flip ? (b ^ (d - 1)) : b;
    std::size_t target = 0;
    for (int q = 0; q < n; ++q)
      if (bit(flipped, q)) target |= std::size_t{1} << (n - 1 - g.permutation[static_cast<std::size_t>(q)]);
    u(target, b) = std::polar(1.0, angle);
  }
  return u;
}

struct PhaseFix {
  DensityMatrix state;
  ComplexMatrix rotation;  // 2x2, acts on qubit 0
  double angle = 0.0;      // rotation = diag(e^{i angle}, e^{-i angle})
};

// z rotation on qubit 0 making the |0..0><1..1| element real and nonnegative.
inline PhaseFix fix_phase(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const std::size_t k = rho.corner();
  const cplx c = rho(0, k);
  if (c == cplx{}) return {rho, ComplexMatrix::identity(2), 0.0};
  const double angle = -0.5 * std::arg(c);
  const std::size_t top = d >> 1;  // qubit 0 is the most significant bit
  ComplexMatrix m = rho.matrix();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const int sa = (a & top) ? -1 : 1;
      const int sb = (b & top) ? -1 : 1;
      if (sa != sb) m(a, b) *= std::polar(1.0, angle * (sa - sb));
    }
  m(0, k) = m(k, 0) = std::abs(c);
  ComplexMatrix rot{{std::polar(1.0, angle), 0.0}, {0.0, std::polar(1.0, -angle)}};
  return {DensityMatrix::trusted(std::move(m), rho.normalized()), std::move(rot), angle};
}

}  // namespace ghzw
