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

#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/numerics.hpp"

namespace ghzw {

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;

// A checked two- or three-qubit density matrix. Instances come from validate()
// or from library code whose construction preserves the invariants.
class DensityMatrix {
 public:
  // Skips validation; the caller guarantees Hermiticity and positivity.
  static DensityMatrix trusted(ComplexMatrix m, bool normalized) {
    const int n = m.is_square() ? qubits_for_dim(m.rows()) : 0;
    if (n == 0) throw InvalidInput("density matrix must be 4x4 or 8x8");
    return DensityMatrix(std::move(m), n, normalized);
  }

  const ComplexMatrix& matrix() const { return m_; }
  int nqubits() const { return n_; }
  bool normalized() const { return normalized_; }
  std::size_t dim() const { return m_.rows(); }
  double trace() const { return m_.trace().real(); }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  // Index of |1...1>, the far corner of the matrix.
  std::size_t corner() const { return dim() - 1; }

 private:
  DensityMatrix(ComplexMatrix m, int n, bool normalized)
      : m_(std::move(m)), n_(n), normalized_(normalized) {}

  ComplexMatrix m_;
  int n_ = 0;
  bool normalized_ = true;
};

// Checks a candidate matrix. Hermiticity defects below kHermitianTol are
// repaired by symmetrizing; anything larger is rejected.
inline DensityMatrix validate(const ComplexMatrix& candidate, bool expect_normalized = true) {
  if (!candidate.is_square() || qubits_for_dim(candidate.rows()) == 0)
    throw InvalidInput("state must be a 4x4 or 8x8 matrix, got " + std::to_string(candidate.rows()) +
                       "x" + std::to_string(candidate.cols()));
  if (!candidate.is_finite()) throw InvalidInput("state has non-finite entries");
  if (max_abs_diff(candidate, candidate.adjoint()) > kHermitianTol)
    throw NotAState("matrix is not Hermitian");
  ComplexMatrix sym = (candidate + candidate.adjoint()) * 0.5;
  const HermEigResult eig = herm_eig(sym);
  if (eig.values.back() < -kPsdTol)
    throw NotAState("matrix is not positive semidefinite (smallest eigenvalue " +
                    std::to_string(eig.values.back()) + ")");
  if (expect_normalized && std::abs(sym.trace().real() - 1.0) > kTraceTol)
    throw NormalizationError("trace is " + std::to_string(sym.trace().real()) + ", expected 1");
  return DensityMatrix::trusted(std::move(sym), expect_normalized);
}

struct PureState {
  std::vector<cplx> amplitudes;
  int nqubits = 0;

  static PureState from(std::vector<cplx> amps) {
    const int n = qubits_for_dim(amps.size());
    if (n == 0) throw InvalidInput("pure state needs 4 or 8 amplitudes");
    return PureState{std::move(amps), n};
  }

  double norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }

  bool is_normalized() const { return std::abs(norm() - 1.0) <= 1e-10; }

  // |psi><psi|, flagged normalized when psi has unit norm.
  DensityMatrix projector() const {
    const std::size_t d = amplitudes.size();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return DensityMatrix::trusted(std::move(m), is_normalized());
  }
};

namespace kets {

inline PureState basis(int nqubits, std::size_t index) {
  const std::size_t d = std::size_t{1} << nqubits;
  if ((nqubits != 2 && nqubits != 3) || index >= d) throw InvalidInput("basis index out of range");
  std::vector<cplx> a(d);
  a[index] = 1.0;
  return PureState::from(std::move(a));
}

// (|0..0> + sign |1..1>)/sqrt2
inline PureState ghz(int nqubits, double sign) {
  const std::size_t d = std::size_t{1} << nqubits;
  std::vector<cplx> a(d);
  a[0] = std::numbers::sqrt2 / 2.0;
  a[d - 1] = sign * std::numbers::sqrt2 / 2.0;
  return PureState::from(std::move(a));
}

inline PureState ghz_plus() { return ghz(3, 1.0); }
inline PureState ghz_minus() { return ghz(3, -1.0); }
inline PureState phi_plus() { return ghz(2, 1.0); }
inline PureState phi_minus() { return ghz(2, -1.0); }

inline PureState psi(double sign) {
  std::vector<cplx> a(4);
  a[1] = std::numbers::sqrt2 / 2.0;
  a[2] = sign * std::numbers::sqrt2 / 2.0;
  return PureState::from(std::move(a));
}

inline PureState psi_plus() { return psi(1.0); }
inline PureState psi_minus() { return psi(-1.0); }

// (|001> + |010> + |100>)/sqrt3
inline PureState w() {
  std::vector<cplx> a(8);
  a[1] = a[2] = a[4] = 1.0 / std::sqrt(3.0);
  return PureState::from(std::move(a));
}

// sigma_x^{x3} |W>
inline PureState w_bar() {
  std::vector<cplx> a(8);
  a[6] = a[5] = a[3] = 1.0 / std::sqrt(3.0);
  return PureState::from(std::move(a));
}

}  // namespace kets

enum class Family {
  ghz_plus,
  ghz_minus,
  w,
  w_bar,
  phi_plus,
  phi_minus,
  psi_plus,
  psi_minus,
  basis,
  rho1,  // p GHZ+ + (1-p) W
  rho2,  // p GHZ+ + (1-p)/2 (W + Wbar)
  rho3,  // p GHZ+ + (1-p) |001><001|
  max_mixed,
};

struct StateName {
  Family family = Family::ghz_plus;
  double p = 1.0;          // mixing parameter of rho1..rho3
  std::size_t index = 0;   // computational index for basis
  int nqubits = 3;         // for basis and max_mixed
};

inline bool is_parametrized(Family f) {
  return f == Family::rho1 || f == Family::rho2 || f == Family::rho3;
}

inline DensityMatrix canonical_state(const StateName& name) {
  if (is_parametrized(name.family) && !(name.p >= 0.0 && name.p <= 1.0))
    throw InvalidInput("mixing parameter p must lie in [0, 1]");
  const auto proj = [](const PureState& s) { return s.projector().matrix(); };
  const double p = name.p;
  switch (name.family) {
    case Family::ghz_plus: return validate(proj(kets::ghz_plus()));
    case Family::ghz_minus: return validate(proj(kets::ghz_minus()));
    case Family::w: return validate(proj(kets::w()));
    case Family::w_bar: return validate(proj(kets::w_bar()));
    case Family::phi_plus: return validate(proj(kets::phi_plus()));
    case Family::phi_minus: return validate(proj(kets::phi_minus()));
    case Family::psi_plus: return validate(proj(kets::psi_plus()));
    case Family::psi_minus: return validate(proj(kets::psi_minus()));
    case Family::basis: return validate(proj(kets::basis(name.nqubits, name.index)));
    case Family::rho1:
      return validate(p * proj(kets::ghz_plus()) + (1.0 - p) * proj(kets::w()));
    case Family::rho2:
      return validate(p * proj(kets::ghz_plus()) +
                      (1.0 - p) * ((proj(kets::w()) + proj(kets::w_bar())) * 0.5));
    case Family::rho3:
      return validate(p * proj(kets::ghz_plus()) + (1.0 - p) * proj(kets::basis(3, 1)));
    case Family::max_mixed: {
      if (name.nqubits != 2 && name.nqubits != 3) throw InvalidInput("max_mixed needs 2 or 3 qubits");
      const std::size_t d = std::size_t{1} << name.nqubits;
      return validate(ComplexMatrix::identity(d) * (1.0 / static_cast<double>(d)));
    }
  }
  throw InvalidInput("unknown state family");
}

inline DensityMatrix canonical_state(Family f, double p = 1.0) {
  return canonical_state(StateName{.family = f, .p = p});
}

// Accepts the identifiers used on the command line, case-insensitively:
// ghz+, ghz-, w, wbar, phi+, phi-, psi+, psi-, basis, rho1, rho2, rho3, maxmixed.
inline Family parse_family(std::string_view text) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static const std::pair<const char*, Family> table[] = {
      {"ghz+", Family::ghz_plus},   {"ghz-", Family::ghz_minus},  {"w", Family::w},
      {"wbar", Family::w_bar},      {"phi+", Family::phi_plus},   {"phiplus", Family::phi_plus},
      {"phi-", Family::phi_minus},  {"phiminus", Family::phi_minus},
      {"psi+", Family::psi_plus},   {"psiplus", Family::psi_plus},
      {"psi-", Family::psi_minus},  {"psiminus", Family::psi_minus},
      {"basis", Family::basis},     {"rho1", Family::rho1},       {"rho2", Family::rho2},
      {"rho3", Family::rho3},       {"maxmixed", Family::max_mixed},
  };
  for (const auto& [key, f] : table)
    if (s == key) return f;
  throw InvalidInput("unknown state name '" + std::string(text) + "'");
}

namespace detail {

// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// One standard normal per two uniform draws (cosine branch of Box-Muller).
// Written out instead of std::normal_distribution, whose algorithm is
// implementation-defined, so seeded states are the same on every platform.
inline double standard_normal(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1]
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline cplx complex_normal(std::mt19937_64& gen) {
  const double re = standard_normal(gen);
  const double im = standard_normal(gen);
  return {re, im};
}

}  // namespace detail

// rho = G G^dagger / tr(G G^dagger), G a 2^N x rank matrix of independent
// complex Gaussians (real part drawn before imaginary part, row-major),
// generator std::mt19937_64 seeded with `seed`.
inline DensityMatrix random_density(std::uint64_t seed, int nqubits, int rank) {
  if (nqubits != 2 && nqubits != 3) throw InvalidInput("random_density: nqubits must be 2 or 3");
  const int d = 1 << nqubits;
  if (rank < 1 || rank > d) throw InvalidInput("random_density: rank out of range");
  std::mt19937_64 gen(seed);
  ComplexMatrix g(static_cast<std::size_t>(d), static_cast<std::size_t>(rank));
  for (auto& z : g.entries()) z = detail::complex_normal(gen);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return validate((rho + rho.adjoint()) * 0.5);
}

// Haar-random pure state (normalized complex Gaussian vector), same generator
// conventions as random_density.
inline PureState random_pure(std::uint64_t seed, int nqubits) {
  if (nqubits != 2 && nqubits != 3) throw InvalidInput("random_pure: nqubits must be 2 or 3");
  std::mt19937_64 gen(seed);
  std::vector<cplx> a(std::size_t{1} << nqubits);
  double s = 0.0;
  for (auto& z : a) {
    z = detail::complex_normal(gen);
    s += std::norm(z);
  }
  for (auto& z : a) z /= std::sqrt(s);
  return PureState::from(std::move(a));
}

}  // namespace ghzw
