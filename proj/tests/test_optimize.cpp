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

#include "ghzw/optimize.hpp"
#include "ghzw/tangle.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ghzw;

namespace {

ComplexMatrix conjugated(const DensityMatrix& rho, const std::vector<ComplexMatrix>& us) {
  const ComplexMatrix u = testing_helpers::local_product(us);
  return u * rho.matrix() * u.adjoint();
}

std::vector<double> sorted_spectrum(const ComplexMatrix& m) { return herm_eig(m).values; }

// Random Bell-diagonal state hidden behind random local unitaries.
DensityMatrix disguised_bell_diagonal(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double w[4], s = 0.0;
  for (double& x : w) s += (x = u(gen));
  const ComplexMatrix bd = oracle::bell_diagonal(w[0] / s, w[1] / s, w[2] / s, w[3] / s);
  const ComplexMatrix l = tensor(testing_helpers::random_su2(gen), testing_helpers::random_su2(gen));
  return validate(l * bd * l.adjoint());
}

}  // namespace

TEST(BellDiagonalize, PsiMinusBecomesPhiPlus) {
  const OptResult r = bell_diagonalize(canonical_state(Family::psi_minus));
  EXPECT_LT(max_abs_diff(r.optimized.matrix(), canonical_state(Family::phi_plus).matrix()), 1e-12);
}

TEST(BellDiagonalize, LargestWeightMovesToPhiPlus) {
  // Weights: Psi+ 0.6, Phi+ 0.3, the other two 0.05.
  const DensityMatrix in = validate(oracle::bell_diagonal(0.3, 0.05, 0.6, 0.05));
  const OptResult r = bell_diagonalize(in);
  const auto w = oracle::bell_weights(r.optimized.matrix());
  EXPECT_NEAR(w[0], 0.6, 1e-12);
  EXPECT_LT(max_abs_diff(r.optimized.matrix(), oracle::bell_diagonal(w[0], w[1], w[2], w[3])), 1e-12);
}

TEST(BellDiagonalize, FixedPointUnchanged) {
  // Phi+ 0.7, Psi+ 0.2, Psi- 0.1, Phi- 0.
  const DensityMatrix in = validate(oracle::bell_diagonal(0.7, 0.0, 0.2, 0.1));
  EXPECT_LT(max_abs_diff(bell_diagonalize(in).optimized.matrix(), in.matrix()), 1e-10);
}

TEST(BellDiagonalize, DisguisedStatesAreRecovered) {
  for (int s = 0; s < 50; ++s) {
    const DensityMatrix in = disguised_bell_diagonal(40 + s);
    const OptResult r = bell_diagonalize(in);
    const auto w = oracle::bell_weights(r.optimized.matrix());
    const auto spec_in = sorted_spectrum(in.matrix()), spec_out = sorted_spectrum(r.optimized.matrix());
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(spec_in[k], spec_out[k], 1e-9);
    EXPECT_NEAR(w[0], spec_in[0], 1e-9);
    const SymCoords c = coords(r.optimized);
    EXPECT_NEAR(2.0 * c.x + std::sqrt(2.0) * c.y - 0.5, 2.0 * spec_in[0] - 1.0, 1e-9);
    EXPECT_GE(r.optimized(0, 3).real(), -1e-12);
    EXPECT_LT(max_abs_diff(conjugated(in, r.applied_unitaries), r.optimized.matrix()), 1e-9);
  }
}

TEST(BellDiagonalize, RejectsUnbalancedMarginals) {
  EXPECT_THROW(bell_diagonalize(random_density(1, 2, 4)), InvalidInput);
  EXPECT_THROW(bell_diagonalize(canonical_state(Family::ghz_plus)), InvalidInput);
}

TEST(Optimize, GhzMinusReachesVertex) {
  const OptResult r = optimize_local_unitaries(canonical_state(Family::ghz_minus));
  const SymCoords c = coords(r.optimized);
  EXPECT_NEAR(c.x, 0.5, 1e-12);
  EXPECT_NEAR(c.y, std::sqrt(3.0) / 4.0, 1e-12);
  EXPECT_NEAR(r.objective_value, 1.0, 1e-12);
}

TEST(Optimize, SymmetricInputNeverWorse) {
  for (const SymCoords& c : oracle::triangle_grid(3, 6)) {
    const OptResult r = optimize_local_unitaries(sym_state(3, c), Objective::measure, {.restarts = 4});
    EXPECT_GE(r.objective_value, tau3_sym(c) - 1e-12);
  }
}

TEST(Optimize, Deterministic) {
  const DensityMatrix rho = random_density(77, 3, 8);
  const OptimizerConfig cfg{.restarts = 8, .seed = 5};
  const OptResult a = optimize_local_unitaries(rho, Objective::measure, cfg);
  const OptResult b = optimize_local_unitaries(rho, Objective::measure, cfg);
  EXPECT_EQ(a.optimized.matrix(), b.optimized.matrix());
  EXPECT_EQ(a.objective_value, b.objective_value);
  EXPECT_EQ(a.evaluations, b.evaluations);
  EXPECT_EQ(a.restarts_run, 8);
}

TEST(Optimize, ContractOnRandomStates) {
  for (int s = 0; s < 12; ++s) {
    const DensityMatrix rho = random_density(80 + s, 3, 1 + s % 8);
    for (Objective obj : {Objective::measure, Objective::fidelity, Objective::corner_element, Objective::hs_distance}) {
      const OptResult r = optimize_local_unitaries(rho, obj, {.restarts = 6, .seed = static_cast<std::uint64_t>(s)});
      EXPECT_GE(r.objective_value, objective_value(obj, coords(fix_phase(rho).state)) - 1e-12);
      const ComplexMatrix rebuilt = conjugated(rho, r.applied_unitaries);
      EXPECT_LT(frobenius_norm(rebuilt - r.optimized.matrix()), 1e-9);
      EXPECT_GE(r.optimized(0, 7).real(), -1e-12);
      EXPECT_EQ(r.optimized(0, 7).imag(), 0.0);
      for (const auto& u : r.applied_unitaries)
        EXPECT_LT(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(2)), 1e-12);
    }
  }
}

TEST(Optimize, MoreRestartsNeverHurt) {
  const DensityMatrix rho = random_density(91, 3, 3);
  const double few = optimize_local_unitaries(rho, Objective::measure, {.restarts = 1}).objective_value;
  const double many = optimize_local_unitaries(rho, Objective::measure, {.restarts = 16}).objective_value;
  EXPECT_GE(many, few);
}

TEST(Objectives, ParseAndEvaluate) {
  EXPECT_EQ(parse_objective("fidelity"), Objective::fidelity);
  EXPECT_EQ(parse_objective("corner-element"), Objective::corner_element);
  EXPECT_EQ(parse_objective("hs-distance"), Objective::hs_distance);
  EXPECT_THROW(parse_objective("energy"), InvalidInput);
  const SymCoords ghz{0.5, std::sqrt(3.0) / 4.0, 3};
  EXPECT_NEAR(objective_value(Objective::fidelity, ghz), 1.0, 1e-15);
  EXPECT_NEAR(objective_value(Objective::hs_distance, ghz), 0.0, 1e-15);
  EXPECT_NEAR(objective_value(Objective::corner_element, ghz), 0.5, 1e-15);
}

TEST(Objectives, HsDistanceMatchesMatrixNorm) {
  const ComplexMatrix ghz = canonical_state(Family::ghz_plus).matrix();
  for (const SymCoords& c : oracle::triangle_grid(3, 5)) {
    if (c.x < 0.0) continue;  // the objective sees the phase-fixed image, x >= 0
    const double direct = frobenius_norm(sym_state(3, c).matrix() - ghz);
    EXPECT_NEAR(-objective_value(Objective::hs_distance, c), direct, 1e-12);
  }
}

TEST(Svd3, ReconstructsWithProperRotations) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> n;
  for (int s = 0; s < 100; ++s) {
    detail::Mat3 t{};
    for (auto& row : t)
      for (double& v : row) v = n(gen);
    if (s % 10 == 0) t[2] = {0.0, 0.0, 0.0};  // rank deficient
    const detail::Svd3 r = detail::svd3(t);
    EXPECT_NEAR(detail::det3(r.u), 1.0, 1e-12);
    EXPECT_NEAR(detail::det3(r.v), 1.0, 1e-12);
    detail::Mat3 s3{};
    for (int k = 0; k < 3; ++k) s3[k][k] = r.s[k];
    const detail::Mat3 back = detail::matmul(detail::matmul(r.u, s3), detail::transpose(r.v));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(back[i][j], t[i][j], 1e-12);
  }
}

TEST(CliffordGroup, HasTwentyFourRotations) {
  const auto& g = detail::clifford_group();
  EXPECT_EQ(g.size(), 24u);
  for (const auto& u : g) {
    const detail::Mat3 r = detail::rotation_of(u);
    EXPECT_NEAR(detail::det3(r), 1.0, 1e-12);
    for (const auto& row : r)
      for (double v : row) EXPECT_NEAR(std::abs(v) * (std::abs(v) - 1.0), 0.0, 1e-12);
  }
}
