#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "descsys/errors.hpp"
#include "descsys/matrix.hpp"
#include "descsys/pencil.hpp"
#include "descsys/solver.hpp"
#include "descsys/subspace.hpp"

namespace descsys {

/// [B, A B, ..., A^{depth-1} B]; n x 0 when depth is 0.
inline RMatrix krylov_matrix(const RMatrix& A, const RMatrix& B, std::size_t depth) {
  if (!A.is_square() || B.rows() != A.rows()) {
    throw DimensionMismatch("krylov: A " + A.shape() + ", B " + B.shape());
  }
  RMatrix out(A.rows(), 0);
  RMatrix block = B;
  for (std::size_t i = 0; i < depth; ++i) {
    out = hcat(out, block);
    if (i + 1 < depth) block = A * block;
  }
  return out;
}

inline Subspace krylov_span(const RMatrix& A, const RMatrix& B, std::size_t depth) {
  return colspace(krylov_matrix(A, B, depth));
}

/// Reachable set from the zero initial condition, as the direct sum of a slow
/// and a fast Krylov span.
struct ReachableSet {
  Subspace slow_part;        // in R^p
  Subspace fast_part;        // in R^q
  Subspace embedded;         // slow (+) fast inside R^m, canonical coordinates
  Subspace original_coords;  // Q * embedded
};

inline Subspace embed_blocks(const Subspace& slow, const Subspace& fast) {
  return colspace(blockdiag(slow.basis(), fast.basis()));
}

inline ReachableSet reachable_from_zero(const QWDecomposition& dec) {
  ReachableSet r;
  r.slow_part = krylov_span(dec.slow_dynamics, dec.slow_input, dec.slow_dim);
  r.fast_part = krylov_span(dec.fast_nilpotent, dec.fast_input, dec.nilpotency_index);
  r.embedded = embed_blocks(r.slow_part, r.fast_part);
  r.original_coords = image(dec.Q, r.embedded);
  return r;
}

/// Number of steps after which every element of the zero-reachable set is
/// attained: p + q*.
inline std::size_t reach_horizon(const QWDecomposition& dec) {
  return dec.slow_dim + dec.nilpotency_index;
}

/// Stacked map from u = [V_0; ...; V_{n-1}] to the canonical state at step k:
/// slow rows read V_0..V_{k-1}, fast rows read V_k..V_{k+w-1} with w fast terms.
/// Columns of inputs outside both windows are zero.
inline RMatrix stacked_input_map(const QWDecomposition& dec, std::size_t k,
                                 std::size_t fast_terms, std::size_t total_inputs) {
  const std::size_t r = dec.input_dim();
  const std::size_t p = dec.slow_dim;
  RMatrix T(dec.state_dim(), total_inputs * r);
  auto place = [&](std::size_t row0, std::size_t input, const RMatrix& blk) {
    for (std::size_t i = 0; i < blk.rows(); ++i) {
      for (std::size_t j = 0; j < r; ++j) T(row0 + i, input * r + j) = blk(i, j);
    }
  };
  RMatrix slow_block = dec.slow_input;  // A^{k-1-j} B_p for j = k-1 down to 0
  for (std::size_t j = k; j-- > 0;) {
    place(0, j, slow_block);
    slow_block = dec.slow_dynamics * slow_block;
  }
  RMatrix fast_block = -dec.fast_input;  // -N^i B_q
  for (std::size_t i = 0; i < fast_terms; ++i) {
    place(p, k + i, fast_block);
    fast_block = dec.fast_nilpotent * fast_block;
  }
  return T;
}

inline InputSequence unstack_inputs(const RMatrix& u, std::size_t count, std::size_t r) {
  InputSequence out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(u.block(i * r, 0, r, 1));
  return out;
}

struct Witness {
  std::size_t steps = 0;  ///< the target is the canonical state at this step
  InputSequence inputs;   ///< V_0 .. V_{steps + q* - 1}
};

/// Inputs steering the zero initial slow state to `target` (canonical
/// coordinates) at step p + q*, with the fast part read as the consistent
/// value of the following q* inputs. One exact joint linear solve.
inline Witness witness_inputs(const QWDecomposition& dec, const RMatrix& target) {
  detail::require_column(target, dec.state_dim(), "target");
  const std::size_t k = reach_horizon(dec);
  const std::size_t total = k + dec.nilpotency_index;
  const RMatrix T = stacked_input_map(dec, k, dec.nilpotency_index, total);
  GeneralSolution sol = [&] {
    try {
      return solve_general(T, target);
    } catch (const NoSolution&) {
      throw NotReachable("target is not in the reachable set from zero");
    }
  }();
  Witness w{k, unstack_inputs(sol.particular, total, dec.input_dim())};

  // Replay: with horizon k + q*, N^{q*} kills the terminal value, so the fast
  // state at k is exactly the consistent one.
  const BoundaryData bd{RMatrix(dec.slow_dim, 1), RMatrix(dec.fast_dim, 1), total};
  const Trajectory t = solve_finite(canonical_system(dec), canonical_coordinates(dec), bd, w.inputs);
  if (vcat(t.slow_states[k], t.fast_states[k]) != target) {
    throw InternalVerificationFailure("witness inputs do not reproduce the target");
  }
  return w;
}

/// offset + span(directions), with the offset reduced modulo the directions
/// so that equal sets compare equal.
class AffineSet {
 public:
  AffineSet(const RMatrix& offset, Subspace directions)
      : offset_(directions.reduce(offset)), directions_(std::move(directions)) {}

  const RMatrix& offset() const { return offset_; }
  const Subspace& directions() const { return directions_; }
  bool contains(const RMatrix& x) const { return directions_.contains(x - offset_); }

  friend bool operator==(const AffineSet&, const AffineSet&) = default;

 private:
  RMatrix offset_;
  Subspace directions_;
};

/// States attainable at one time index k under a fixed terminal fast value,
/// with the initial slow state and all inputs free.
struct InitialReachableSlice {
  std::size_t time = 0;
  Subspace slow;     ///< range(A^k) + Krylov(A, B_p, k)
  bool slow_full = false;
  AffineSet fast;    ///< N^{M-k} y_M + Krylov(N, B_q, min(M-k, q*))
};

/// Per-time family whose union is the reachable set for terminal value y_M.
inline std::vector<InitialReachableSlice> initial_reachable_set(const QWDecomposition& dec,
                                                                const RMatrix& terminal_fast,
                                                                std::size_t horizon) {
  detail::require_column(terminal_fast, dec.fast_dim, "terminal fast state");
  std::vector<InitialReachableSlice> out;
  const RMatrix& A = dec.slow_dynamics;
  const RMatrix& N = dec.fast_nilpotent;
  for (std::size_t k = 0; k <= horizon; ++k) {
    Subspace slow = subspace_sum(colspace(matpow(A, k)), krylov_span(A, dec.slow_input, k));
    const bool full = slow.is_full();
    const std::size_t terms = std::min(horizon - k, dec.nilpotency_index);
    AffineSet fast(matpow(N, horizon - k) * terminal_fast,
                   krylov_span(N, dec.fast_input, terms));
    out.push_back({k, std::move(slow), full, std::move(fast)});
  }
  return out;
}

/// Earliest time at which `target` (canonical coordinates) lies in the slice.
inline std::optional<std::size_t> initial_reachable_time(
    const std::vector<InitialReachableSlice>& slices, const RMatrix& target) {
  for (const auto& s : slices) {
    const std::size_t p = s.slow.ambient_dim();
    const std::size_t q = s.fast.offset().rows();
    detail::require_column(target, p + q, "target");
    if (s.slow.contains(target.block(0, 0, p, 1)) && s.fast.contains(target.block(p, 0, q, 1))) {
      return s.time;
    }
  }
  return std::nullopt;
}

}  // namespace descsys
