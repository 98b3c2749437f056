#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>

#include "descsys/errors.hpp"
#include "descsys/matrix.hpp"
#include "descsys/pencil.hpp"
#include "descsys/reachability.hpp"
#include "descsys/solver.hpp"
#include "descsys/subspace.hpp"

namespace descsys {

struct ControllabilityReport {
  std::size_t slow_rank = 0;
  std::size_t fast_rank = 0;
  std::size_t slow_required = 0;
  std::size_t fast_required = 0;
  bool controllable = false;
  RMatrix slow_matrix;  ///< [B_p, A B_p, ..., A^{p-1} B_p]
  RMatrix fast_matrix;  ///< [B_q, N B_q, ..., N^{q-1} B_q]
};

/// Rank test on the two diagonal blocks of the stacked input map.
inline ControllabilityReport is_controllable(const QWDecomposition& dec) {
  ControllabilityReport r;
  r.slow_required = dec.slow_dim;
  r.fast_required = dec.fast_dim;
  r.slow_matrix = krylov_matrix(dec.slow_dynamics, dec.slow_input, dec.slow_dim);
  r.fast_matrix = krylov_matrix(dec.fast_nilpotent, dec.fast_input, dec.fast_dim);
  r.slow_rank = rank(r.slow_matrix);
  r.fast_rank = rank(r.fast_matrix);
  r.controllable = r.slow_rank == r.slow_required && r.fast_rank == r.fast_required;
  return r;
}

/// (A, B) controllable iff the smallest A-invariant subspace containing
/// colspan(B) is everything. Grown by S <- S + A S until it stops.
inline bool pair_controllable(const RMatrix& A, const RMatrix& B) {
  Subspace s = colspace(B);
  for (;;) {
    Subspace next = subspace_sum(s, image(A, s));
    if (next == s) break;
    s = std::move(next);
  }
  return s.is_full();
}

inline bool controllable_iff_subsystems(const QWDecomposition& dec) {
  return pair_controllable(dec.slow_dynamics, dec.slow_input) &&
         pair_controllable(dec.fast_nilpotent, dec.fast_input);
}

struct SynthesisResult {
  std::size_t k1 = 0;
  InputSequence inputs;  // V_0 .. V_{M-1}
  RMatrix achieved;      // canonical state at k1, from an independent replay
};

/// Unforced canonical state at step k: [A^k y0; N^{M-k} y_M].
inline RMatrix unforced_state(const QWDecomposition& dec, const BoundaryData& bd,
                              std::size_t k) {
  return vcat(matpow(dec.slow_dynamics, k) * bd.initial_slow,
              matpow(dec.fast_nilpotent, bd.horizon - k) * bd.terminal_fast);
}

/// Inputs V_0..V_{M-1} that put the canonical state at k1 (default p) equal
/// to `target`, solving T V = target - U_{k1} exactly. Free unknowns and
/// inputs outside both windows are zero.
inline SynthesisResult synthesize(const QWDecomposition& dec, const BoundaryData& bd,
                                  const RMatrix& target,
                                  std::optional<std::size_t> k1_override = std::nullopt) {
  detail::require_column(target, dec.state_dim(), "target");
  detail::require_column(bd.initial_slow, dec.slow_dim, "initial slow state");
  detail::require_column(bd.terminal_fast, dec.fast_dim, "terminal fast state");
  const std::size_t horizon = bd.horizon;
  if (horizon < reach_horizon(dec) || horizon < 1) {
    throw BadHorizon("horizon " + std::to_string(horizon) + " is shorter than p + q* = " +
                     std::to_string(reach_horizon(dec)));
  }
  const std::size_t k1 = k1_override.value_or(dec.slow_dim);
  if (k1 > horizon) {
    throw BadHorizon("k1 = " + std::to_string(k1) + " beyond horizon " +
                     std::to_string(horizon));
  }

  const std::size_t fast_terms = std::min(horizon - k1, dec.nilpotency_index);
  const RMatrix T = stacked_input_map(dec, k1, fast_terms, horizon);
  GeneralSolution sol = [&] {
    try {
      return solve_general(T, target - unforced_state(dec, bd, k1));
    } catch (const NoSolution&) {
      throw NotAchievable("target is not attainable at k1 = " + std::to_string(k1));
    }
  }();

  SynthesisResult out;
  out.k1 = k1;
  out.inputs = unstack_inputs(sol.particular, horizon, dec.input_dim());
  const Trajectory t = solve_finite(canonical_system(dec), canonical_coordinates(dec), bd, out.inputs);
  out.achieved = vcat(t.slow_states[k1], t.fast_states[k1]);
  if (out.achieved != target) {
    throw InternalVerificationFailure("synthesized inputs miss the target");
  }
  return out;
}

}  // namespace descsys
