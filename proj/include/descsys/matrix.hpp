#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "descsys/errors.hpp"
#include "descsys/rational.hpp"

namespace descsys {

/// Dense row-major matrix of exact rationals.
///
/// Zero-sized dimensions are legal: an n x 0 matrix is the basis of the
/// trivial subspace of an n-dimensional space, and 0 x 0 blocks appear when a
/// descriptor system has no slow or no fast part. Columns (state vectors,
/// inputs) are represented as n x 1 matrices.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw DimensionMismatch("ragged matrix initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RMatrix identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RMatrix zero(std::size_t rows, std::size_t cols) {
    return RMatrix(rows, cols);
  }
  static RMatrix column(std::initializer_list<Rational> entries) {
    RMatrix m(entries.size(), 1);
    std::size_t i = 0;
    for (const auto& e : entries) m(i++, 0) = e;
    return m;
  }
  static RMatrix column(std::span<const Rational> entries) {
    RMatrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
  }
  /// The i-th standard basis column of length n.
  static RMatrix unit(std::size_t n, std::size_t i) {
    RMatrix m(n, 1);
    m(i, 0) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  RMatrix transpose() const {
    RMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  RMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
      throw DimensionMismatch("block out of range");
    }
    RMatrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    }
    return b;
  }
  RMatrix col(std::size_t j) const { return block(0, j, rows_, 1); }
  RMatrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

  RMatrix& operator+=(const RMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  RMatrix& operator-=(const RMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  RMatrix& operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend RMatrix operator+(RMatrix a, const RMatrix& b) { return a += b; }
  friend RMatrix operator-(RMatrix a, const RMatrix& b) { return a -= b; }
  friend RMatrix operator-(RMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend RMatrix operator*(RMatrix a, const Rational& s) { return a *= s; }
  friend RMatrix operator*(const Rational& s, RMatrix a) { return a *= s; }

  friend RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("matrix product " + a.shape() + " * " +
                              b.shape());
    }
    RMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend bool operator==(const RMatrix& a, const RMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  friend std::ostream& operator<<(std::ostream& os, const RMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << "]";
  }

 private:
  void require_same_shape(const RMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionMismatch(std::string("operator") + op + " on " + shape() +
                              " and " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline RMatrix hcat(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("hcat of " + a.shape() + " and " + b.shape());
  }
  RMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

/// Horizontal concatenation of blocks that all have `rows` rows.
inline RMatrix hcat(std::span<const RMatrix> blocks, std::size_t rows) {
  RMatrix out(rows, 0);
  for (const auto& b : blocks) out = hcat(out, b);
  return out;
}

inline RMatrix vcat(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionMismatch("vcat of " + a.shape() + " and " + b.shape());
  }
  RMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

inline RMatrix vcat(std::span<const RMatrix> blocks, std::size_t cols) {
  RMatrix out(0, cols);
  for (const auto& b : blocks) out = vcat(out, b);
  return out;
}

inline RMatrix blockdiag(const RMatrix& a, const RMatrix& b) {
  RMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  }
  return c;
}

inline RMatrix matpow(const RMatrix& m, std::size_t k) {
  if (!m.is_square()) throw DimensionMismatch("matpow of non-square " + m.shape());
  RMatrix result = RMatrix::identity(m.rows());
  RMatrix base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

struct RrefResult {
  RMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan elimination to the unique reduced row-echelon form.
inline RrefResult rref(RMatrix m) {
  RrefResult out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead_row, j));
    }
    const Rational inv = Rational(1) / m(lead_row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, c).is_zero()) continue;
      const Rational factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(lead_row, j);
    }
    out.pivot_cols.push_back(c);
    ++lead_row;
  }
  out.rank = lead_row;
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RMatrix& m) { return rref(m).rank; }

inline RMatrix inverse(const RMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square " + m.shape());
  const std::size_t n = m.rows();
  RrefResult r = rref(hcat(m, RMatrix::identity(n)));
  if (r.rank < n || (n > 0 && r.pivot_cols[n - 1] != n - 1)) {
    throw SingularMatrix("matrix is singular");
  }
  return r.reduced.block(0, n, n, n);
}

/// Exact determinant by fraction-carrying Gaussian elimination.
inline Rational determinant(RMatrix m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square " + m.shape());
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c).is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const Rational inv = Rational(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Rational factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

}  // namespace descsys
