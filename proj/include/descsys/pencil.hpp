#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "descsys/errors.hpp"
#include "descsys/matrix.hpp"
#include "descsys/subspace.hpp"

namespace descsys {

/// The system F x_{k+1} = G x_k + B v_k with F allowed to be singular.
class DescriptorSystem {
 public:
  DescriptorSystem(RMatrix F, RMatrix G, RMatrix B)
      : F_(std::move(F)), G_(std::move(G)), B_(std::move(B)) {
    if (!F_.is_square() || !G_.is_square() || F_.rows() != G_.rows()) {
      throw DimensionMismatch("F and G must be square of equal size, got " +
                              F_.shape() + " and " + G_.shape());
    }
    if (B_.rows() != F_.rows()) {
      throw DimensionMismatch("B must have " + std::to_string(F_.rows()) +
                              " rows, got " + B_.shape());
    }
  }

  const RMatrix& F() const { return F_; }
  const RMatrix& G() const { return G_; }
  const RMatrix& B() const { return B_; }
  std::size_t state_dim() const { return F_.rows(); }
  std::size_t input_dim() const { return B_.cols(); }

 private:
  RMatrix F_, G_, B_;
};

/// Block split of a regular pencil:
///   P F Q = blockdiag(I, fast_nilpotent),  P G Q = blockdiag(slow_dynamics, I),
///   P B   = [slow_input; fast_input].
/// The slow block is only similar to a Jordan matrix, not reduced to one.
struct QWDecomposition {
  RMatrix P;
  RMatrix Q;
  RMatrix slow_dynamics;   // slow_dim x slow_dim
  RMatrix fast_nilpotent;  // fast_dim x fast_dim
  RMatrix slow_input;      // slow_dim x inputs
  RMatrix fast_input;      // fast_dim x inputs
  std::size_t slow_dim = 0;
  std::size_t fast_dim = 0;
  std::size_t nilpotency_index = 0;

  std::size_t state_dim() const { return slow_dim + fast_dim; }
  std::size_t input_dim() const { return slow_input.cols(); }
};

/// det(s F - G).
inline Rational pencil_determinant(const RMatrix& F, const RMatrix& G,
                                   const Rational& s) {
  return determinant(s * F - G);
}

inline void require_square_pair(const RMatrix& F, const RMatrix& G) {
  if (!F.is_square() || !G.is_square() || F.rows() != G.rows()) {
    throw DimensionMismatch("pencil needs square F, G of equal size, got " +
                            F.shape() + " and " + G.shape());
  }
}

/// det(sF - G) has degree <= m, so it vanishes identically iff it vanishes at
/// the m + 1 points s = 0..m.
inline bool is_regular(const RMatrix& F, const RMatrix& G) {
  require_square_pair(F, G);
  const std::size_t m = F.rows();
  for (std::size_t s = 0; s <= m; ++s) {
    if (!pencil_determinant(F, G, Rational(static_cast<long>(s))).is_zero()) return true;
  }
  return false;
}

/// Coefficients c_0..c_m of det(sF - G) = sum c_i s^i, by exact
/// interpolation through s = 0..m.
inline RMatrix pencil_determinant_coefficients(const RMatrix& F, const RMatrix& G) {
  require_square_pair(F, G);
  const std::size_t m = F.rows();
  RMatrix vandermonde(m + 1, m + 1);
  RMatrix values(m + 1, 1);
  for (std::size_t i = 0; i <= m; ++i) {
    const Rational s(static_cast<long>(i));
    Rational power = 1;
    for (std::size_t j = 0; j <= m; ++j) {
      vandermonde(i, j) = power;
      power *= s;
    }
    values(i, 0) = pencil_determinant(F, G, s);
  }
  return inverse(vandermonde) * values;
}

/// Degree of det(sF - G); nullopt when the pencil is singular.
inline std::optional<std::size_t> det_degree(const RMatrix& F, const RMatrix& G) {
  const RMatrix c = pencil_determinant_coefficients(F, G);
  for (std::size_t i = c.rows(); i-- > 0;) {
    if (!c(i, 0).is_zero()) return i;
  }
  return std::nullopt;
}

/// Smallest i with N^i = 0 (0 for the empty matrix).
inline std::size_t nilpotency_index(const RMatrix& N) {
  if (!N.is_square()) throw DimensionMismatch("nilpotency_index of " + N.shape());
  if (N.rows() == 0) return 0;
  RMatrix power = N;
  for (std::size_t i = 1; i <= N.rows(); ++i) {
    if (power.is_zero()) return i;
    power = power * N;
  }
  throw NotNilpotent("matrix is not nilpotent");
}

struct WongLimits {
  Subspace slow;  ///< limit of V_{i+1} = G^{-1}(F V_i), V_0 = everything
  Subspace fast;  ///< limit of W_{i+1} = F^{-1}(G W_i), W_0 = {0}
};

inline WongLimits wong_sequences(const RMatrix& F, const RMatrix& G) {
  if (!is_regular(F, G)) throw IrregularPencil("pencil sF - G is singular");
  const std::size_t m = F.rows();

  Subspace v = Subspace::full(m);
  for (;;) {
    Subspace next = preimage(G, image(F, v));
    if (next == v) break;
    v = std::move(next);
  }
  Subspace w = Subspace::trivial(m);
  for (;;) {
    Subspace next = preimage(F, image(G, w));
    if (next == w) break;
    w = std::move(next);
  }

  if (v.dim() + w.dim() != m || !direct_sum_check(v, w)) {
    throw InternalVerificationFailure("Wong limits do not complement each other");
  }
  return {std::move(v), std::move(w)};
}

struct DecompositionCheck {
  bool fast_block_identity = false;  ///< P F Q == blockdiag(I, N)
  bool slow_block_identity = false;  ///< P G Q == blockdiag(A, I)
  bool input_split = false;          ///< P B == [B_p; B_q]
  bool nilpotency = false;           ///< N^{q*} = 0 and q* is minimal

  bool all() const {
    return fast_block_identity && slow_block_identity && input_split && nilpotency;
  }
};

inline DecompositionCheck check_decomposition(const DescriptorSystem& sys,
                                              const QWDecomposition& dec) {
  DecompositionCheck c;
  const std::size_t p = dec.slow_dim;
  const std::size_t q = dec.fast_dim;
  if (p + q != sys.state_dim()) return c;
  c.fast_block_identity =
      dec.P * sys.F() * dec.Q == blockdiag(RMatrix::identity(p), dec.fast_nilpotent);
  c.slow_block_identity =
      dec.P * sys.G() * dec.Q == blockdiag(dec.slow_dynamics, RMatrix::identity(q));
  c.input_split = dec.P * sys.B() == vcat(dec.slow_input, dec.fast_input);
  try {
    c.nilpotency = nilpotency_index(dec.fast_nilpotent) == dec.nilpotency_index;
  } catch (const NotNilpotent&) {
    c.nilpotency = false;
  }
  return c;
}

/// Quasi-Weierstrass form from the Wong limits: Q = [V | W], P = [F V | G W]^{-1}.
inline QWDecomposition decompose(const DescriptorSystem& sys) {
  const WongLimits limits = wong_sequences(sys.F(), sys.G());
  const RMatrix& V = limits.slow.basis();
  const RMatrix& W = limits.fast.basis();
  const std::size_t p = V.cols();
  const std::size_t q = W.cols();

  QWDecomposition dec;
  dec.slow_dim = p;
  dec.fast_dim = q;
  dec.Q = hcat(V, W);
  try {
    dec.P = inverse(hcat(sys.F() * V, sys.G() * W));
  } catch (const SingularMatrix&) {
    throw InternalVerificationFailure("[F V | G W] is singular for a regular pencil");
  }
  const RMatrix pfq = dec.P * sys.F() * dec.Q;
  const RMatrix pgq = dec.P * sys.G() * dec.Q;
  const RMatrix pb = dec.P * sys.B();
  dec.slow_dynamics = pgq.block(0, 0, p, p);
  dec.fast_nilpotent = pfq.block(p, p, q, q);
  dec.slow_input = pb.block(0, 0, p, pb.cols());
  dec.fast_input = pb.block(p, 0, q, pb.cols());
  try {
    dec.nilpotency_index = nilpotency_index(dec.fast_nilpotent);
  } catch (const NotNilpotent&) {
    throw InternalVerificationFailure("fast block of a regular pencil is not nilpotent");
  }
  if (!check_decomposition(sys, dec).all()) {
    throw InternalVerificationFailure("block identities fail for computed P, Q");
  }
  return dec;
}

/// Decomposition of a system already in block form, with P = Q = I.
inline QWDecomposition decomposition_from_blocks(RMatrix slow_dynamics,
                                                 RMatrix fast_nilpotent,
                                                 RMatrix slow_input,
                                                 RMatrix fast_input) {
  if (!slow_dynamics.is_square() || !fast_nilpotent.is_square() ||
      slow_input.rows() != slow_dynamics.rows() ||
      fast_input.rows() != fast_nilpotent.rows() ||
      slow_input.cols() != fast_input.cols()) {
    throw DimensionMismatch("inconsistent block shapes");
  }
  QWDecomposition dec;
  dec.slow_dim = slow_dynamics.rows();
  dec.fast_dim = fast_nilpotent.rows();
  dec.nilpotency_index = nilpotency_index(fast_nilpotent);
  dec.P = RMatrix::identity(dec.state_dim());
  dec.Q = RMatrix::identity(dec.state_dim());
  dec.slow_dynamics = std::move(slow_dynamics);
  dec.fast_nilpotent = std::move(fast_nilpotent);
  dec.slow_input = std::move(slow_input);
  dec.fast_input = std::move(fast_input);
  return dec;
}

/// The same blocks with P = Q = I, i.e. the decomposition of canonical_system(dec).
inline QWDecomposition canonical_coordinates(const QWDecomposition& dec) {
  QWDecomposition out = dec;
  out.P = RMatrix::identity(dec.state_dim());
  out.Q = RMatrix::identity(dec.state_dim());
  return out;
}

/// The system in canonical coordinates: (blockdiag(I, N), blockdiag(A, I), P B).
inline DescriptorSystem canonical_system(const QWDecomposition& dec) {
  return DescriptorSystem(
      blockdiag(RMatrix::identity(dec.slow_dim), dec.fast_nilpotent),
      blockdiag(dec.slow_dynamics, RMatrix::identity(dec.fast_dim)),
      vcat(dec.slow_input, dec.fast_input));
}

}  // namespace descsys
