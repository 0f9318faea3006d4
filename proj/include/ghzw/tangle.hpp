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

// Closed-form entanglement measures: the pure-state three-tangle, the
// Wootters concurrence, and the exact measures on the GHZ-symmetric families.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ghzw/error.hpp"
#include "ghzw/numerics.hpp"
#include "ghzw/states.hpp"
#include "ghzw/symmetry.hpp"

namespace ghzw {

inline double tau3_pure(const PureState& psi) {
  if (psi.nqubits != 3 || psi.amplitudes.size() != 8) throw InvalidInput("tau3_pure: three qubits required");
  const auto& a = psi.amplitudes;
  const auto sq = [](cplx z) { return z * z; };
  const cplx d1 = sq(a[0b000]) * sq(a[0b111]) + sq(a[0b001]) * sq(a[0b110]) +
                  sq(a[0b010]) * sq(a[0b101]) + sq(a[0b011]) * sq(a[0b100]);
  const cplx d2 = a[0b000] * a[0b001] * a[0b110] * a[0b111] + a[0b000] * a[0b010] * a[0b101] * a[0b111] +
                  a[0b000] * a[0b011] * a[0b100] * a[0b111] + a[0b001] * a[0b010] * a[0b101] * a[0b110] +
                  a[0b001] * a[0b011] * a[0b100] * a[0b110] + a[0b010] * a[0b011] * a[0b100] * a[0b101];
  const cplx d3 = a[0b000] * a[0b110] * a[0b101] * a[0b011] + a[0b100] * a[0b010] * a[0b001] * a[0b111];
  return 2.0 * std::sqrt(std::abs(d1 - 2.0 * d2 + 4.0 * d3));
}

// Wootters concurrence. The decreasing square roots of the spectrum of
// sqrt(rho) rho~ sqrt(rho) are the singular values of S = sqrt(rho) Y sqrt(rho)*
// with Y = sigma_y x sigma_y. They are read off the Hermitian embedding
// [[0, S], [S^dagger, 0]] so that small values are not squared and rooted.
inline double concurrence_wootters(const DensityMatrix& rho) {
  if (rho.nqubits() != 2) throw InvalidInput("concurrence_wootters: two qubits required");
  const ComplexMatrix root = sqrtm_psd(rho.matrix());
  const ComplexMatrix yy = tensor(pauli_y(), pauli_y());
  const ComplexMatrix s = root * yy * root.conj();
  ComplexMatrix embed(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      embed(i, 4 + j) = s(i, j);
      embed(4 + j, i) = std::conj(s(i, j));
    }
  const HermEigResult eig = herm_eig(embed);
  const auto& l = eig.values;
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// 2|x| + sqrt2 y - 1/2 before clipping.
inline double concurrence_sym_signed(const SymCoords& c) {
  return 2.0 * std::abs(c.x) + std::numbers::sqrt2 * c.y - 0.5;
}

inline double concurrence_sym(const SymCoords& c) {
  if (c.nqubits != 2) throw InvalidInput("concurrence_sym: two-qubit coordinates required");
  if (!in_triangle(c)) throw OutOfDomain("concurrence_sym: coordinates lie outside the triangle");
  return std::max(0.0, concurrence_sym_signed(c));
}

// Point of the GHZ/W line, the border between zero and nonzero three-tangle.
struct WLinePoint {
  double v = 0.0;
  double x = 0.0;
  double y = 0.0;
};

inline WLinePoint wline(double v) {
  if (!(std::abs(v) <= 1.0)) throw OutOfDomain("wline: parameter must lie in [-1, 1]");
  const double v2 = v * v;
  const double x = (v2 * v2 * v + 8.0 * v2 * v) / (8.0 * (4.0 - v2));
  const double y = std::sqrt(3.0) / 4.0 * (4.0 - v2 - v2 * v2) / (4.0 - v2);
  return {v, x, y};
}

inline constexpr double kGhzPlusX = 0.5;
inline const double kGhzPlusY = std::sqrt(3.0) / 4.0;

// Resolution of t: the bisection stops at |dv| < 1e-12, which leaves t
// uncertain at the 1e-12 level. Values of 1 - t below this are reported as 0,
// i.e. the point is taken to lie on the GHZ/W line.
inline constexpr double kMeasureResolution = 1e-10;

inline double snap_to_zero(double v) { return v <= kMeasureResolution ? 0.0 : v; }

struct Intersection {
  WLinePoint wpoint;
  double t = 0.0;     // query = GHZ+ + t (wpoint - GHZ+)
  double tau3 = 0.0;  // max(0, 1 - t), with kMeasureResolution snapping
  bool degenerate = false;
};

// Where the ray from GHZ+ through the query meets the GHZ/W line (v in [0, 1]).
// g(v) is the cross product of (wline(v) - GHZ+) with (query - GHZ+); its root
// is bracketed on a 64-cell grid and refined by bisection.
inline Intersection wline_intersection(const SymCoords& c) {
  if (c.nqubits != 3) throw InvalidInput("wline_intersection: three-qubit coordinates required");
  if (!in_triangle(c)) throw OutOfDomain("wline_intersection: coordinates lie outside the triangle");
  if (c.x < -kTriangleSlack) throw OutOfDomain("wline_intersection: mirror x to x >= 0 first");
  const double dx = std::max(c.x, 0.0) - kGhzPlusX;
  const double dy = c.y - kGhzPlusY;
  if (std::hypot(dx, dy) < 1e-9) return {wline(1.0), 0.0, 1.0, true};

  const auto g = [&](double v) {
    const WLinePoint w = wline(v);
    return (w.x - kGhzPlusX) * dy - (w.y - kGhzPlusY) * dx;
  };

  constexpr int kCells = 64;
  double root = -1.0;
  double lo = 0.0, glo = g(0.0);
  if (glo == 0.0) root = 0.0;
  for (int i = 1; i <= kCells && root < 0.0; ++i) {
    const double hi = static_cast<double>(i) / kCells;
    const double ghi = g(hi);
    if (ghi == 0.0) {
      root = hi;
    } else if ((glo < 0.0) != (ghi < 0.0)) {
      double a = lo, b = hi, ga = glo;
      while (b - a >= 1e-12) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if ((gm < 0.0) == (ga < 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      root = 0.5 * (a + b);
    }
    lo = hi;
    glo = ghi;
  }
  if (root < 0.0) {
    // Points within the triangle slack can sit just past an end of the line.
    constexpr double kEndpointTol = 1e-8;
    if (std::abs(g(0.0)) <= kEndpointTol)
      root = 0.0;
    else if (std::abs(g(1.0)) <= kEndpointTol)
      root = 1.0;
    else
      throw GeometryError("wline_intersection: no crossing with the GHZ/W line");
  }

  const WLinePoint w = wline(root);
  const double wx = w.x - kGhzPlusX, wy = w.y - kGhzPlusY;
  const double t = (dx * wx + dy * wy) / (wx * wx + wy * wy);
  return {w, t, snap_to_zero(1.0 - t), false};
}

// 1 - t without clipping: positive above the GHZ/W line, negative below it.
// Continuous across the border, which gives optimizers a slope to follow in
// the region where the three-tangle itself is flat zero.
inline double tau3_sym_signed(const SymCoords& c) {
  SymCoords m = c;
  m.x = std::abs(c.x);
  const Intersection hit = wline_intersection(m);
  return 1.0 - hit.t;
}

inline double tau3_sym(const SymCoords& c) {
  if (c.nqubits != 3) throw InvalidInput("tau3_sym: three-qubit coordinates required");
  if (!in_triangle(c)) throw OutOfDomain("tau3_sym: coordinates lie outside the triangle");
  return snap_to_zero(tau3_sym_signed(c));
}

}  // namespace ghzw
