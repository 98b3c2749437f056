#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "descsys/errors.hpp"
#include "descsys/matrix.hpp"

namespace descsys {

/// Linear subspace of Q^n held in a canonical basis.
///
/// The basis is the transpose of the nonzero rows of rref(generators^T): the
/// "column echelon form". Two Subspace values spanning the same set are
/// equal entry for entry, so operator== is set equality.
class Subspace {
 public:
  Subspace() = default;

  /// Span of the columns of `generators` (ambient dimension = its row count).
  static Subspace span(const RMatrix& generators) {
    RrefResult r = rref(generators.transpose());
    Subspace s;
    s.ambient_dim_ = generators.rows();
    s.basis_ = r.reduced.block(0, 0, r.rank, generators.rows()).transpose();
    s.pivots_ = std::move(r.pivot_cols);
    return s;
  }
  static Subspace trivial(std::size_t ambient_dim) {
    return span(RMatrix(ambient_dim, 0));
  }
  static Subspace full(std::size_t ambient_dim) {
    return span(RMatrix::identity(ambient_dim));
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.cols(); }
  const RMatrix& basis() const { return basis_; }
  /// Coordinate in which basis column i has its leading 1 (all other basis
  /// columns are zero there).
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_trivial() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim_; }

  /// x minus its component along the basis, using pivot coordinates.
  /// Zero exactly when x lies in the subspace.
  RMatrix reduce(const RMatrix& x) const {
    check_vector(x);
    RMatrix r = x;
    for (std::size_t c = 0; c < dim(); ++c) {
      const Rational coeff = x(pivots_[c], 0);
      if (coeff.is_zero()) continue;
      for (std::size_t i = 0; i < ambient_dim_; ++i) r(i, 0) -= coeff * basis_(i, c);
    }
    return r;
  }

  bool contains(const RMatrix& x) const { return reduce(x).is_zero(); }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  void check_vector(const RMatrix& x) const {
    if (x.rows() != ambient_dim_ || x.cols() != 1) {
      throw DimensionMismatch("vector " + x.shape() + " in subspace of R^" +
                              std::to_string(ambient_dim_));
    }
  }

  std::size_t ambient_dim_ = 0;
  RMatrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace colspace(const RMatrix& m) { return Subspace::span(m); }

inline Subspace nullspace(const RMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<RMatrix> gens;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RMatrix v(m.cols(), 1);
    v(f, 0) = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v(r.pivot_cols[i], 0) = -r.reduced(i, f);
    gens.push_back(std::move(v));
  }
  return Subspace::span(hcat(gens, m.cols()));
}

inline bool contains(const Subspace& s, const RMatrix& x) { return s.contains(x); }

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("subspaces of different ambient dimension");
  }
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return Subspace::span(hcat(a.basis(), b.basis()));
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  // a.basis * x = b.basis * y  <=>  [A, -B] (x; y) = 0
  const Subspace pairs = nullspace(hcat(a.basis(), -b.basis()));
  const RMatrix coeffs = pairs.basis().block(0, 0, a.dim(), pairs.dim());
  return Subspace::span(a.basis() * coeffs);
}

/// True iff a and b intersect only in zero.
inline bool direct_sum_check(const Subspace& a, const Subspace& b) {
  return subspace_intersect(a, b).is_trivial();
}

/// A * S.
inline Subspace image(const RMatrix& a, const Subspace& s) {
  if (a.cols() != s.ambient_dim()) {
    throw DimensionMismatch("image: " + a.shape() + " applied to R^" +
                            std::to_string(s.ambient_dim()));
  }
  return Subspace::span(a * s.basis());
}

/// {x : A x in S}.
inline Subspace preimage(const RMatrix& a, const Subspace& s) {
  if (a.rows() != s.ambient_dim()) {
    throw DimensionMismatch("preimage: " + a.shape() + " into R^" +
                            std::to_string(s.ambient_dim()));
  }
  // Rows of `annihilator` span the left null space of S, so
  // A x in S  <=>  annihilator * A x = 0.
  const RMatrix annihilator = nullspace(s.basis().transpose()).basis().transpose();
  return nullspace(annihilator * a);
}

struct GeneralSolution {
  RMatrix particular;   ///< free variables set to zero
  Subspace homogeneous;  ///< null space of A
};

/// All solutions of A x = b; throws NoSolution when b is not in colspace(A).
inline GeneralSolution solve_general(const RMatrix& a, const RMatrix& b) {
  if (b.cols() != 1 || a.rows() != b.rows()) {
    throw DimensionMismatch("solve_general: " + a.shape() + " with rhs " + b.shape());
  }
  const std::size_t n = a.cols();
  const RrefResult r = rref(hcat(a, b));
  if (r.rank > 0 && r.pivot_cols[r.rank - 1] == n) {
    throw NoSolution("right-hand side is not in the column space");
  }
  GeneralSolution out{RMatrix(n, 1), nullspace(a)};
  for (std::size_t i = 0; i < r.rank; ++i) out.particular(r.pivot_cols[i], 0) = r.reduced(i, n);
  return out;
}

}  // namespace descsys
