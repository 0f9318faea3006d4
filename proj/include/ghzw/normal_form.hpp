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

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/numerics.hpp"
#include "ghzw/states.hpp"

namespace ghzw {

struct NormalFormConfig {
  double marginal_tol = 1e-10;       // ||rho_j / tr - 1/2||_F for every party
  double zero_threshold = 1e-12;     // trace below which the orbit is declared null
  int max_iterations = 10000;        // single-party updates
  double singular_threshold = 1e-14; // det(rho_j) / tr(rho)^2 below which the orbit is null
};

enum class NormalFormStatus { converged, zero, iteration_limit };

inline std::string to_string(NormalFormStatus s) {
  switch (s) {
    case NormalFormStatus::converged: return "converged";
    case NormalFormStatus::zero: return "zero";
    case NormalFormStatus::iteration_limit: return "iteration-limit";
  }
  return "unknown";
}

struct NormalFormResult {
  DensityMatrix nf;                  // unnormalized; the zero matrix when status == zero
  std::vector<ComplexMatrix> filters;// accumulated determinant-one filter per party
  double trace_factor = 0.0;         // tr nf
  int iterations = 0;
  NormalFormStatus status = NormalFormStatus::converged;
  std::vector<double> sweep_traces;  // trace before the first and after every full sweep
};

inline bool marginals_balanced(const ComplexMatrix& rho, int nqubits, double tol) {
  const double tr = rho.trace().real();
  const ComplexMatrix half = ComplexMatrix::identity(2) * 0.5;
  for (int j = 0; j < nqubits; ++j)
    if (frobenius_norm(partial_trace(rho, j) * (1.0 / tr) - half) >= tol) return false;
  return true;
}

// Iterated local filtering: party j is updated with
// A_j = det(rho_j)^{1/4} rho_j^{-1/2}, which maps its marginal to a multiple of
// the identity and can only lower the trace. Parties are visited cyclically.
inline NormalFormResult normal_form(const DensityMatrix& input, const NormalFormConfig& cfg = {}) {
  if (!input.normalized()) throw InvalidInput("normal_form: input must be normalized");
  const int n = input.nqubits();
  NormalFormResult out{input, std::vector<ComplexMatrix>(static_cast<std::size_t>(n), ComplexMatrix::identity(2)), 1.0, 0, NormalFormStatus::converged, {}};
  ComplexMatrix rho = input.matrix();
  out.sweep_traces.push_back(rho.trace().real());

  const auto finish = [&](NormalFormStatus status) {
    out.status = status;
    if (status == NormalFormStatus::zero) {
      out.trace_factor = 0.0;
      out.nf = DensityMatrix::trusted(ComplexMatrix(rho.rows(), rho.cols()), false);
    } else {
      out.trace_factor = rho.trace().real();
      out.nf = DensityMatrix::trusted(rho, false);
    }
    return out;
  };

  for (;;) {
    const double tr = rho.trace().real();
    if (tr < cfg.zero_threshold) return finish(NormalFormStatus::zero);
    if (marginals_balanced(rho, n, cfg.marginal_tol)) return finish(NormalFormStatus::converged);
    if (out.iterations >= cfg.max_iterations) return finish(NormalFormStatus::iteration_limit);

    const int party = out.iterations % n;
    const ComplexMatrix marginal = partial_trace(rho, party);
    const double det = det2(marginal).real();
    if (det < cfg.singular_threshold * tr * tr) return finish(NormalFormStatus::zero);

    const ComplexMatrix filter =
        inv_sqrtm(marginal, std::numeric_limits<double>::min()) * std::pow(det, 0.25);
    rho = apply_local(rho, filter, party);
    rho = (rho + rho.adjoint()) * 0.5;
    auto& acc = out.filters[static_cast<std::size_t>(party)];
    acc = filter * acc;

    ++out.iterations;
    if (out.iterations % n == 0) out.sweep_traces.push_back(rho.trace().real());
  }
}

// (A_1 x .. x A_N) rho (A_1 x .. x A_N)^dagger
inline ComplexMatrix apply_filters(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& filters) {
  ComplexMatrix out = rho;
  for (std::size_t j = 0; j < filters.size(); ++j) out = apply_local(out, filters[j], static_cast<int>(j));
  return out;
}

}  // namespace ghzw
