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

#include <gtest/gtest.h>

#include <numbers>

#include "ghzw/tangle.hpp"
#include "ghzw/witness.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ghzw;

namespace {

const double kS3 = std::sqrt(3.0);

PureState transformed(const PureState& psi, const ComplexMatrix& op) {
  return PureState::from(testing_helpers::apply(op, psi.amplitudes));
}

}  // namespace

TEST(Tau3Pure, Examples) {
  EXPECT_NEAR(tau3_pure(kets::ghz_plus()), 1.0, 1e-15);
  EXPECT_NEAR(tau3_pure(kets::w()), 0.0, 1e-15);
  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    std::vector<cplx> a(8);
    a[0] = std::sqrt(p);
    a[7] = std::sqrt(1.0 - p);
    EXPECT_NEAR(tau3_pure(PureState::from(a)), 2.0 * std::sqrt(p * (1.0 - p)), 1e-14);
  }
}

TEST(Tau3Pure, HomogeneousOfDegreeTwo) {
  const PureState psi = random_pure(1, 3);
  std::vector<cplx> scaled = psi.amplitudes;
  const cplx c{0.7, -1.3};
  for (auto& z : scaled) z *= c;
  EXPECT_NEAR(tau3_pure(PureState::from(scaled)), std::norm(c) * tau3_pure(psi), 1e-12);
}

TEST(Tau3Pure, InvariantUnderDeterminantOneFilters) {
  std::mt19937_64 gen(17);
  for (int s = 0; s < 50; ++s) {
    const PureState psi = random_pure(20 + s, 3);
    const ComplexMatrix op = testing_helpers::local_product(
        {testing_helpers::random_sl2(gen), testing_helpers::random_sl2(gen), testing_helpers::random_sl2(gen)});
    EXPECT_NEAR(tau3_pure(transformed(psi, op)), tau3_pure(psi), 1e-9);
  }
}

TEST(Tau3Pure, InvariantUnderUnitariesAndPermutations) {
  std::mt19937_64 gen(19);
  for (int s = 0; s < 30; ++s) {
    const PureState psi = random_pure(60 + s, 3);
    const ComplexMatrix op = testing_helpers::local_product(
        {testing_helpers::random_su2(gen), testing_helpers::random_su2(gen), testing_helpers::random_su2(gen)});
    EXPECT_NEAR(tau3_pure(transformed(psi, op)), tau3_pure(psi), 1e-10);
    for (const std::vector<int>& perm : {std::vector<int>{1, 0, 2}, {2, 1, 0}, {1, 2, 0}})
      EXPECT_NEAR(tau3_pure(transformed(psi, oracle::permutation_operator(perm))), tau3_pure(psi), 1e-10);
  }
}

TEST(Wootters, Examples) {
  EXPECT_NEAR(concurrence_wootters(canonical_state(Family::phi_plus)), 1.0, 1e-12);
  const double sep[] = {0.5, 0.0, 0.0, 0.5};
  EXPECT_NEAR(concurrence_wootters(validate(ComplexMatrix::diagonal(sep))), 0.0, 1e-12);
  const ComplexMatrix phi = canonical_state(Family::phi_plus).matrix();
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const DensityMatrix werner = validate(phi * p + ComplexMatrix::identity(4) * ((1.0 - p) / 4.0));
    EXPECT_NEAR(concurrence_wootters(werner), oracle::werner_concurrence(p), 1e-9) << p;
  }
}

TEST(Wootters, BellDiagonalMatchesLargestWeight) {
  const std::vector<double> w = {0.1, 0.6, 0.2, 0.1};
  const DensityMatrix rho = validate(oracle::bell_diagonal(w[0], w[1], w[2], w[3]));
  EXPECT_NEAR(concurrence_wootters(rho), oracle::bell_diagonal_concurrence(w), 1e-12);
}

TEST(Wootters, TwirledStateMatchesClosedForm) {
  for (int s = 0; s < 50; ++s) {
    const DensityMatrix rho = random_density(1200 + s, 2, 1 + s % 4);
    EXPECT_NEAR(concurrence_wootters(twirl(rho)), concurrence_sym(coords(rho)), 1e-9);
  }
}

TEST(Wootters, RequiresTwoQubits) {
  EXPECT_THROW(concurrence_wootters(canonical_state(Family::ghz_plus)), InvalidInput);
}

TEST(ConcurrenceSym, Examples) {
  EXPECT_NEAR(concurrence_sym({0.5, std::sqrt(2.0) / 4.0, 2}), 1.0, 1e-15);
  EXPECT_EQ(concurrence_sym({0.0, -std::sqrt(2.0) / 4.0, 2}), 0.0);
  // (0.3, 0) sits outside the two-qubit triangle (|x| <= 1/4 at y = 0); the
  // closed form still evaluates to 0.1 there.
  EXPECT_NEAR(concurrence_sym_signed({0.3, 0.0, 2}), 0.1, 1e-15);
  EXPECT_THROW(concurrence_sym({0.3, 0.0, 2}), OutOfDomain);
  EXPECT_NEAR(concurrence_sym({0.2, 0.1, 2}), 0.4 + std::sqrt(2.0) * 0.1 - 0.5, 1e-15);
  EXPECT_THROW(concurrence_sym({0.9, 0.0, 2}), OutOfDomain);
}

TEST(WLine, Examples) {
  const WLinePoint a = wline(0.0), b = wline(1.0), c = wline(-1.0);
  EXPECT_EQ(a.x, 0.0);
  EXPECT_NEAR(a.y, kS3 / 4.0, 1e-15);
  EXPECT_NEAR(b.x, 0.375, 1e-15);
  EXPECT_NEAR(b.y, kS3 / 6.0, 1e-15);
  EXPECT_NEAR(c.x, -0.375, 1e-15);
  EXPECT_NEAR(c.y, kS3 / 6.0, 1e-15);
  EXPECT_THROW(wline(1.01), OutOfDomain);
}

TEST(WLineIntersection, Examples) {
  const Intersection top = wline_intersection({0.0, kS3 / 4.0, 3});
  EXPECT_NEAR(top.t, 1.0, 1e-9);
  EXPECT_EQ(top.tau3, 0.0);

  // GHZ+ + 0.4 (P - GHZ+) with P = wline(1).
  const SymCoords q{0.45, 13.0 * kS3 / 60.0, 3};
  const Intersection mid = wline_intersection(q);
  EXPECT_NEAR(mid.t, 0.4, 1e-9);
  EXPECT_NEAR(mid.tau3, 0.6, 1e-9);
  EXPECT_NEAR(kGhzPlusX + mid.t * (mid.wpoint.x - kGhzPlusX), q.x, 1e-9);
  EXPECT_NEAR(kGhzPlusY + mid.t * (mid.wpoint.y - kGhzPlusY), q.y, 1e-9);

  const Intersection vertex = wline_intersection({0.5, kS3 / 4.0, 3});
  EXPECT_TRUE(vertex.degenerate);
  EXPECT_EQ(vertex.t, 0.0);
  EXPECT_EQ(vertex.tau3, 1.0);
}

TEST(WLineIntersection, Rejections) {
  EXPECT_THROW(wline_intersection({-0.2, 0.0, 3}), OutOfDomain);
  EXPECT_THROW(wline_intersection({0.6, 0.0, 3}), OutOfDomain);
  EXPECT_THROW(wline_intersection({0.1, 0.0, 2}), InvalidInput);
}

TEST(Tau3Sym, Examples) {
  EXPECT_NEAR(tau3_sym({0.5, kS3 / 4.0, 3}), 1.0, 1e-15);
  EXPECT_NEAR(tau3_sym({-0.5, kS3 / 4.0, 3}), 1.0, 1e-15);
  EXPECT_EQ(tau3_sym({0.375, kS3 / 6.0, 3}), 0.0);
  EXPECT_EQ(tau3_sym({0.0, -kS3 / 12.0, 3}), 0.0);
}

TEST(Tau3Sym, Rho2LineIsCollinearWithGhzAndP) {
  // Collinearity check independent of the root finder: the cross product of
  // (c - GHZ+) with (P - GHZ+) vanishes along the family.
  const WLinePoint p = wline(1.0);
  for (int i = 0; i <= 100; ++i) {
    const double q = i / 100.0;
    const SymCoords c = coords(canonical_state(Family::rho2, q));
    EXPECT_NEAR(c.x, q / 2.0, 1e-15);
    EXPECT_NEAR(c.y, (q - 0.25) / kS3, 1e-15);
    EXPECT_NEAR((c.x - kGhzPlusX) * (p.y - kGhzPlusY) - (c.y - kGhzPlusY) * (p.x - kGhzPlusX), 0.0, 1e-15);
    EXPECT_NEAR(tau3_sym(c), std::max(0.0, 4.0 * q - 3.0), 1e-9) << q;
  }
}

TEST(Tau3Sym, MatchesBruteForceOracle) {
  for (const SymCoords& c : oracle::triangle_grid(3, 15))
    EXPECT_NEAR(tau3_sym(c), oracle::tau3_sym(c), 1e-7) << c.x << ", " << c.y;
}

TEST(Tau3Sym, ZeroOnWLine) {
  for (int i = 0; i < 1000; ++i) {
    const WLinePoint w = wline(-1.0 + 2.0 * i / 999.0);
    EXPECT_EQ(tau3_sym({w.x, w.y, 3}), 0.0);
  }
}

TEST(Tau3Sym, MonotoneInXAndY) {
  const Triangle t = triangle(3);
  const int m = 40;
  for (int i = 0; i <= m; ++i) {
    const double y = t.bottom + (t.top - t.bottom) * i / m;
    double prev = -1.0;
    for (int j = 0; j <= m; ++j) {
      const SymCoords c{0.5 * j / m, y, 3};
      if (!in_triangle(c)) break;
      const double v = tau3_sym(c);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
  for (int j = 0; j <= m; ++j) {
    const double x = 0.5 * j / m;
    double prev = -1.0;
    for (int i = 0; i <= m; ++i) {
      const SymCoords c{x, t.bottom + (t.top - t.bottom) * i / m, 3};
      if (!in_triangle(c)) continue;
      const double v = tau3_sym(c);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(Tau3Sym, XAndYFormsAgree) {
  for (const SymCoords& c : oracle::triangle_grid(3, 20)) {
    if (c.x < 0.0) continue;
    const Intersection hit = wline_intersection(c);
    if (hit.degenerate) continue;
    const double dxw = 0.5 - hit.wpoint.x, dyw = kGhzPlusY - hit.wpoint.y;
    if (dxw <= 1e-6 || dyw <= 1e-6) continue;
    EXPECT_NEAR((c.x - hit.wpoint.x) / dxw, (c.y - hit.wpoint.y) / dyw, 1e-9);
  }
}

TEST(Tau3Sym, Rejections) {
  EXPECT_THROW(tau3_sym({0.6, 0.0, 3}), OutOfDomain);
  EXPECT_THROW(tau3_sym({0.1, 0.0, 2}), InvalidInput);
}
