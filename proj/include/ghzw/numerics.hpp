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

// Small dense complex linear algebra. Everything here works on matrices of
// dimension at most 8 (three qubits) and favours robustness over speed.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"

namespace ghzw {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDim = 8;

// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InvalidInput("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> entries() { return data_; }
  std::span<const cplx> entries() const { return data_; }

  bool is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix conj() const {
    ComplexMatrix m = *this;
    for (auto& z : m.data_) z = std::conj(z);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product: inner dimensions differ");
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const cplx& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix shapes differ");
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  return d;
}

inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

// Number of qubits for a Hilbert-space dimension; 0 if dim is not 4 or 8.
// Only the two- and three-qubit cases are supported anywhere in the library.
inline int qubits_for_dim(std::size_t dim) {
  if (dim == 4) return 2;
  if (dim == 8) return 3;
  return 0;
}

// Kronecker product, index (i_A i_B, j_A j_B).
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_finite() || !b.is_finite()) throw InvalidInput("tensor: non-finite entries");
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim)
    throw InvalidInput("tensor: result exceeds " + std::to_string(kMaxDim) + " dimensions");
  ComplexMatrix m(rows, cols);
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja)
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          m(ia * b.rows() + ib, ja * b.cols() + jb) = a(ia, ja) * b(ib, jb);
  return m;
}

inline cplx det2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw InvalidInput("det2: expected a 2x2 matrix");
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

struct HermEigResult {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
// (p,q) element, then applies the real symmetric Jacobi rotation. Sweeps visit
// pairs in fixed row-major order, so identical inputs give identical output.
inline HermEigResult herm_eig(const ComplexMatrix& h, double herm_tol = 1e-9) {
  if (!h.is_square() || h.rows() == 0 || h.rows() > kMaxDim)
    throw InvalidInput("herm_eig: expected a square matrix of dimension 1..8");
  if (!h.is_finite()) throw InvalidInput("herm_eig: non-finite entries");
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, frobenius_norm(h));
  if (max_abs_diff(h, h.adjoint()) > herm_tol * scale)
    throw InvalidInput("herm_eig: matrix is not Hermitian");

  ComplexMatrix a = (h + h.adjoint()) * 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm = frobenius_norm(a);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-13 * norm) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const cplx phase = std::conj(a(p, q) / mag);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, phase) * [[c, s], [-s, c]] restricted to (p, q).
        const cplx jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });
  HermEigResult out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

// V f(diag) V^dagger for a Hermitian input.
template <typename F>
ComplexMatrix herm_apply(const ComplexMatrix& h, F&& f) {
  const HermEigResult eig = herm_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += eig.vectors(i, k) * fk * std::conj(eig.vectors(j, k));
  }
  return out;
}

// Square root of a positive semidefinite matrix; negative eigenvalues clip to 0.
inline ComplexMatrix sqrtm_psd(const ComplexMatrix& h) {
  return herm_apply(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

// Inverse square root. Eigenvalues below singular_threshold are rejected.
inline ComplexMatrix inv_sqrtm(const ComplexMatrix& h, double singular_threshold) {
  const HermEigResult eig = herm_eig(h);
  if (eig.values.back() < singular_threshold)
    throw InvalidInput("inv_sqrtm: matrix is singular below the threshold");
  return herm_apply(h, [](double x) { return 1.0 / std::sqrt(x); });
}

// Reduced 2x2 density matrix of one qubit. Qubit 0 is the most significant bit
// of the computational-basis index.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, int party) {
  const int n = rho.is_square() ? qubits_for_dim(rho.rows()) : 0;
  if (n == 0) throw InvalidInput("partial_trace: expected a 4x4 or 8x8 matrix");
  if (party < 0 || party >= n) throw InvalidInput("partial_trace: party index out of range");
  const std::size_t bit = std::size_t{1} << (n - 1 - party);
  ComplexMatrix out(2, 2);
  for (std::size_t rest = 0; rest < rho.rows(); ++rest) {
    if (rest & bit) continue;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        out(i, j) += rho(rest | (i ? bit : 0), rest | (j ? bit : 0));
  }
  return out;
}

// (1 x .. x A x .. x 1) rho (1 x .. x A x .. x 1)^dagger with A acting on `party`.
inline ComplexMatrix apply_local(const ComplexMatrix& rho, const ComplexMatrix& a, int party) {
  const int n = rho.is_square() ? qubits_for_dim(rho.rows()) : 0;
  if (n == 0) throw InvalidInput("apply_local: expected a 4x4 or 8x8 matrix");
  if (party < 0 || party >= n) throw InvalidInput("apply_local: party index out of range");
  if (a.rows() != 2 || a.cols() != 2) throw InvalidInput("apply_local: expected a 2x2 operator");
  const std::size_t dim = rho.rows();
  const std::size_t bit = std::size_t{1} << (n - 1 - party);
  ComplexMatrix left(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t ri = (r & bit) ? 1 : 0;
    const std::size_t r0 = r & ~bit, r1 = r | bit;
    for (std::size_t c = 0; c < dim; ++c) left(r, c) = a(ri, 0) * rho(r0, c) + a(ri, 1) * rho(r1, c);
  }
  ComplexMatrix out(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const std::size_t ci = (c & bit) ? 1 : 0;
    const std::size_t c0 = c & ~bit, c1 = c | bit;
    const cplx b0 = std::conj(a(ci, 0)), b1 = std::conj(a(ci, 1));
    for (std::size_t r = 0; r < dim; ++r) out(r, c) = left(r, c0) * b0 + left(r, c1) * b1;
  }
  return out;
}

// U rho U^dagger.
inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  return u * rho * u.adjoint();
}

}  // namespace ghzw
