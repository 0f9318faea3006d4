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

// The optimized symmetrization pipeline and its cheaper variants.
//
//   normal form -> renormalize -> local-unitary optimization -> twirl
//   -> closed-form measure of the symmetric image -> rescale by tr(nf)
//
// Every candidate computed along the way is a valid lower bound on its own,
// so the report value is the largest of them.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/normal_form.hpp"
#include "ghzw/numerics.hpp"
#include "ghzw/optimize.hpp"
#include "ghzw/states.hpp"
#include "ghzw/symmetry.hpp"
#include "ghzw/tangle.hpp"

namespace ghzw {

enum class Mode { full, no_normal_form, no_unitary_opt, fast };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::full: return "full";
    case Mode::no_normal_form: return "no-normal-form";
    case Mode::no_unitary_opt: return "no-unitary-opt";
    case Mode::fast: return "fast";
  }
  return "unknown";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "full") return Mode::full;
  if (s == "no-normal-form") return Mode::no_normal_form;
  if (s == "no-unitary-opt") return Mode::no_unitary_opt;
  if (s == "fast") return Mode::fast;
  throw InvalidInput("unknown mode '" + std::string(s) + "'");
}

struct WitnessConfig {
  Mode mode = Mode::full;
  Objective objective = Objective::measure;
  NormalFormConfig normal_form;
  OptimizerConfig optimizer;
  // In full mode, also evaluate the no-normal-form and no-unitary-opt
  // variants as extra candidates. The no-normal-form run doubles the cost.
  bool include_ablations = false;
};

struct Candidate {
  std::string label;
  double value = 0.0;
  SymCoords coords;  // of the symmetric image the value was read from
};

struct WitnessReport {
  double value = 0.0;  // certified lower bound; exact concurrence for N = 2
  int nqubits = 0;
  Mode mode = Mode::full;
  double trace_factor = 1.0;
  SymCoords coords_raw;  // twirl image of the phase-fixed input
  SymCoords coords_opt;  // twirl image behind the winning candidate
  std::vector<Candidate> candidates;
  NormalFormStatus normal_form_status = NormalFormStatus::converged;
  bool normal_form_run = false;
  int normal_form_iterations = 0;
  std::uint64_t seed = 0;
  int evaluations = 0;
  bool exact = false;  // value is the measure itself, not only a bound
  std::vector<std::string> notes;
};

enum class LinearWitness { w2, w3 };

// -2 tr(W2 rho) with W2 = 1/2 - |Phi+><Phi+|, or -4 tr(W3 rho) with
// W3 = 3/4 - |GHZ+><GHZ+|. Signed; not clipped.
inline double linear_witness(const DensityMatrix& rho, LinearWitness which) {
  const int n = which == LinearWitness::w2 ? 2 : 3;
  if (rho.nqubits() != n) throw InvalidInput("linear_witness: qubit count does not match the witness");
  const std::size_t d = rho.dim();
  const DensityMatrix ghz = (n == 2 ? kets::phi_plus() : kets::ghz_plus()).projector();
  const double offset = n == 2 ? 0.5 : 0.75;
  const double factor = n == 2 ? -2.0 : -4.0;
  const ComplexMatrix w = ComplexMatrix::identity(d) * offset - ghz.matrix();
  return factor * (w * rho.matrix()).trace().real();
}

// Symmetric-family measure: concurrence for two qubits, three-tangle for three.
inline double measure_sym(const SymCoords& c) {
  return c.nqubits == 3 ? tau3_sym(c) : concurrence_sym(c);
}

// Phase fix, four matrix elements, closed form. No normal form, no search.
inline double fast_bound(const DensityMatrix& rho) {
  if (!rho.normalized()) throw InvalidInput("fast_bound: state must be normalized");
  return measure_sym(coords(fix_phase(rho).state));
}

namespace detail {

inline DensityMatrix renormalized(const DensityMatrix& nf, double trace) {
  return DensityMatrix::trusted(nf.matrix() * (1.0 / trace), true);
}

inline bool is_ghz_symmetric(const DensityMatrix& rho) {
  return max_abs_diff(twirl(rho).matrix(), rho.matrix()) < 1e-10;
}

inline void aggregate(WitnessReport& r) {
  const auto best = std::max_element(r.candidates.begin(), r.candidates.end(),
                                     [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  r.value = snap_to_zero(best->value);  // below kMeasureResolution counts as 0
  r.coords_opt = best->coords;
}

// Unitary step on a normalized state: deterministic Bell diagonalization for
// a balanced two-qubit state, the restarted simplex search otherwise.
inline OptResult unitary_step(const DensityMatrix& rho, const WitnessConfig& cfg) {
  if (rho.nqubits() == 2 && marginals_balanced(rho.matrix(), 2, 1e-6)) return bell_diagonalize(rho);
  return optimize_local_unitaries(rho, cfg.objective, cfg.optimizer);
}

inline WitnessReport run_pipeline(const DensityMatrix& rho, const WitnessConfig& cfg) {
  if (!rho.normalized()) throw InvalidInput("state must be normalized");
  const int n = rho.nqubits();
  WitnessReport r;
  r.nqubits = n;
  r.mode = cfg.mode;
  r.seed = cfg.optimizer.seed;

  r.coords_raw = coords(fix_phase(rho).state);
  const double raw = measure_sym(r.coords_raw);
  if (cfg.mode == Mode::fast) {
    r.candidates.push_back({"fast", raw, r.coords_raw});
    aggregate(r);
    return r;
  }
  r.candidates.push_back({"linear", linear_witness(rho, n == 2 ? LinearWitness::w2 : LinearWitness::w3), coords(rho)});
  r.candidates.push_back({"raw", raw, r.coords_raw});

  const bool want_nf = cfg.mode == Mode::full || cfg.mode == Mode::no_unitary_opt;
  const bool want_no_nf = cfg.mode == Mode::no_normal_form || (cfg.mode == Mode::full && cfg.include_ablations);

  if (want_no_nf) {
    const OptResult opt = optimize_local_unitaries(rho, cfg.objective, cfg.optimizer);
    const SymCoords c = coords(opt.optimized);
    r.candidates.push_back({"no-normal-form", measure_sym(c), c});
    r.evaluations += opt.evaluations;
  }

  if (want_nf) {
    const NormalFormResult nf = normal_form(rho, cfg.normal_form);
    r.normal_form_run = true;
    r.normal_form_status = nf.status;
    r.normal_form_iterations = nf.iterations;
    r.trace_factor = nf.trace_factor;
    if (nf.status == NormalFormStatus::zero) {
      // The orbit closure contains the zero matrix: every SL-invariant
      // measure vanishes and the procedure stops here.
      r.candidates = {{"normal-form-zero", 0.0, r.coords_raw}};
      r.notes.push_back("normal form is zero; the measure vanishes");
      r.exact = true;
      aggregate(r);
      return r;
    }
    if (nf.status == NormalFormStatus::iteration_limit)
      r.notes.push_back("normal form hit the iteration limit; the last iterate was used");

    const DensityMatrix unit = renormalized(nf.nf, nf.trace_factor);
    if (cfg.mode == Mode::no_unitary_opt || cfg.include_ablations) {
      const SymCoords c = coords(fix_phase(unit).state);
      r.candidates.push_back({"no-unitary-opt", measure_sym(c) * nf.trace_factor, c});
    }
    if (cfg.mode == Mode::full) {
      const OptResult opt = unitary_step(unit, cfg);
      const SymCoords c = coords(opt.optimized);
      r.candidates.push_back({"full", measure_sym(c) * nf.trace_factor, c});
      r.evaluations += opt.evaluations;
    }
  }

  aggregate(r);
  if (n == 2)
    r.exact = cfg.mode == Mode::full && r.normal_form_status == NormalFormStatus::converged;
  else
    r.exact = is_ghz_symmetric(fix_phase(rho).state);
  return r;
}

}  // namespace detail

// Lower bound on the three-tangle of a three-qubit state.
inline WitnessReport ghz_tangle_bound(const DensityMatrix& rho, const WitnessConfig& cfg = {}) {
  if (rho.nqubits() != 3) throw InvalidInput("ghz_tangle_bound: three qubits required");
  return detail::run_pipeline(rho, cfg);
}

// Concurrence of a two-qubit state. With the default full mode and a
// converged normal form this is exact.
inline WitnessReport concurrence_bound(const DensityMatrix& rho, const WitnessConfig& cfg = {}) {
  if (rho.nqubits() != 2) throw InvalidInput("concurrence_bound: two qubits required");
  return detail::run_pipeline(rho, cfg);
}

inline WitnessReport entanglement_bound(const DensityMatrix& rho, const WitnessConfig& cfg = {}) {
  return rho.nqubits() == 2 ? concurrence_bound(rho, cfg) : ghz_tangle_bound(rho, cfg);
}

inline double candidate_value(const WitnessReport& r, std::string_view label) {
  for (const auto& c : r.candidates)
    if (c.label == label) return c.value;
  throw InvalidInput("report has no candidate '" + std::string(label) + "'");
}

}  // namespace ghzw
