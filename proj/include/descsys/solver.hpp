#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "descsys/errors.hpp"
#include "descsys/matrix.hpp"
#include "descsys/pencil.hpp"

namespace descsys {

/// V_0, V_1, ... each an (inputs x 1) column, indexed by absolute time.
using InputSequence = std::vector<RMatrix>;

/// Two-point boundary data of the finite-horizon problem: the initial slow
/// state and the terminal fast state, both in canonical coordinates.
struct BoundaryData {
  RMatrix initial_slow;   // slow_dim x 1
  RMatrix terminal_fast;  // fast_dim x 1
  std::size_t horizon = 1;
};

struct Trajectory {
  std::vector<RMatrix> states;       // X_0 .. X_M, original coordinates
  InputSequence inputs;              // V_0 .. V_{M-1}
  std::vector<RMatrix> slow_states;  // canonical slow part, 0 .. M
  std::vector<RMatrix> fast_states;  // canonical fast part, 0 .. M
};

namespace detail {

inline void require_column(const RMatrix& v, std::size_t rows, const char* what) {
  if (v.rows() != rows || v.cols() != 1) {
    throw DimensionMismatch(std::string(what) + " must be " + std::to_string(rows) +
                            "x1, got " + v.shape());
  }
}

inline void require_inputs(const QWDecomposition& dec, const InputSequence& inputs,
                           std::size_t needed) {
  if (inputs.size() < needed) {
    throw DimensionMismatch("need " + std::to_string(needed) + " inputs, got " +
                            std::to_string(inputs.size()));
  }
  for (std::size_t i = 0; i < needed; ++i) require_column(inputs[i], dec.input_dim(), "input");
}

}  // namespace detail

/// Slow state at step k from the closed form
///   A^k y0 + sum_{i<k} A^{k-i-1} B_p V_i.
inline RMatrix forward_state(const QWDecomposition& dec, const RMatrix& initial_slow,
                             const InputSequence& inputs, std::size_t k) {
  detail::require_column(initial_slow, dec.slow_dim, "initial slow state");
  detail::require_inputs(dec, inputs, k);
  const RMatrix& A = dec.slow_dynamics;
  RMatrix state = matpow(A, k) * initial_slow;
  RMatrix power = RMatrix::identity(dec.slow_dim);  // A^{k-i-1}, i descending
  for (std::size_t i = k; i-- > 0;) {
    state += power * dec.slow_input * inputs[i];
    power = power * A;
  }
  return state;
}

/// Fast state consistent with the inputs V_k .. V_{k+q*-1} (window[0] = V_k):
///   -sum_{i<q*} N^i B_q V_{k+i}.
inline RMatrix fast_state_consistent(const QWDecomposition& dec, const InputSequence& window) {
  detail::require_inputs(dec, window, dec.nilpotency_index);
  RMatrix state(dec.fast_dim, 1);
  RMatrix power = RMatrix::identity(dec.fast_dim);
  for (std::size_t i = 0; i < dec.nilpotency_index; ++i) {
    state -= power * dec.fast_input * window[i];
    power = power * dec.fast_nilpotent;
  }
  return state;
}

/// Fast state at step k of the horizon-M problem with terminal value y_M:
///   N^{M-k} y_M - sum_{i < min(M-k, q*)} N^i B_q V_{k+i}.
/// Terms with i >= q* vanish, so only inputs k .. k+min(M-k,q*)-1 are read.
inline RMatrix fast_state_finite(const QWDecomposition& dec, const RMatrix& terminal_fast,
                                 const InputSequence& inputs, std::size_t k,
                                 std::size_t horizon) {
  if (k > horizon) {
    throw BadHorizon("time " + std::to_string(k) + " beyond horizon " +
                     std::to_string(horizon));
  }
  detail::require_column(terminal_fast, dec.fast_dim, "terminal fast state");
  const std::size_t terms = std::min(horizon - k, dec.nilpotency_index);
  detail::require_inputs(dec, inputs, k + terms);
  const RMatrix& N = dec.fast_nilpotent;
  RMatrix state = matpow(N, horizon - k) * terminal_fast;
  RMatrix power = RMatrix::identity(dec.fast_dim);
  for (std::size_t i = 0; i < terms; ++i) {
    state -= power * dec.fast_input * inputs[k + i];
    power = power * N;
  }
  return state;
}

/// The unique consistent Y^q_0 of the infinite-horizon system for the
/// given leading inputs.
inline RMatrix admissible_initial_states(const QWDecomposition& dec,
                                         const InputSequence& inputs) {
  return fast_state_consistent(dec, inputs);
}

/// Full trajectory of the two-point problem on 0..M, mapped back through Q.
/// The result is checked against F X_{k+1} = G X_k + B V_k before returning.
inline Trajectory solve_finite(const DescriptorSystem& sys, const QWDecomposition& dec,
                               const BoundaryData& bd, const InputSequence& inputs) {
  if (sys.state_dim() != dec.state_dim() || sys.input_dim() != dec.input_dim()) {
    throw DimensionMismatch("decomposition does not match system dimensions");
  }
  if (bd.horizon < 1) throw BadHorizon("horizon must be at least 1");
  if (inputs.size() != bd.horizon) {
    throw DimensionMismatch("expected " + std::to_string(bd.horizon) + " inputs, got " +
                            std::to_string(inputs.size()));
  }
  detail::require_column(bd.initial_slow, dec.slow_dim, "initial slow state");
  detail::require_column(bd.terminal_fast, dec.fast_dim, "terminal fast state");
  detail::require_inputs(dec, inputs, inputs.size());

  Trajectory t;
  t.inputs = inputs;
  for (std::size_t k = 0; k <= bd.horizon; ++k) {
    RMatrix slow = forward_state(dec, bd.initial_slow, inputs, k);
    RMatrix fast = fast_state_finite(dec, bd.terminal_fast, inputs, k, bd.horizon);
    t.states.push_back(dec.Q * vcat(slow, fast));
    t.slow_states.push_back(std::move(slow));
    t.fast_states.push_back(std::move(fast));
  }

  for (std::size_t k = 0; k < bd.horizon; ++k) {
    if (sys.F() * t.states[k + 1] != sys.G() * t.states[k] + sys.B() * inputs[k]) {
      throw InternalVerificationFailure("trajectory violates the system equation at k = " +
                                        std::to_string(k));
    }
  }
  return t;
}

}  // namespace descsys
