#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "superbim/matrix.hpp"

namespace superbim {

/// Reduced row echelon form of a row span, built incrementally.
///
/// Rows are fed one at a time and reduced against the current pivot rows;
/// pivots always sit at the lowest-index nonzero column, so the result is the
/// canonical RREF of the span and independent of insertion order.
template <class K>
class RowSpan {
 public:
  explicit RowSpan(size_t cols) : cols_(cols) {}

  size_t cols() const { return cols_; }
  size_t rank() const { return rows_.size(); }
  const std::vector<Vec<K>>& rows() const { return rows_; }
  const std::vector<size_t>& pivot_cols() const { return pivots_; }

  /// Reduces v against the span in place; returns the residue.
  Vec<K> reduce(Vec<K> v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (FieldOps<K>::is_zero(v[pivots_[r]])) continue;
      K f = v[pivots_[r]];  // pivot rows are normalized to leading 1
      for (size_t j = 0; j < cols_; ++j) {
        if (!FieldOps<K>::is_zero(rows_[r][j])) v[j] -= f * rows_[r][j];
      }
    }
    return v;
  }

  /// Inserts v; returns true when it enlarged the span.
  bool insert(Vec<K> v) {
    v = reduce(std::move(v));
    size_t lead = cols_;
    for (size_t j = 0; j < cols_; ++j)
      if (!FieldOps<K>::is_zero(v[j])) {
        lead = j;
        break;
      }
    if (lead == cols_) return false;
    K inv = K(1) / v[lead];
    for (auto& x : v)
      if (!FieldOps<K>::is_zero(x)) x *= inv;
    // Keep existing rows fully reduced against the new pivot.
    for (auto& row : rows_) {
      if (FieldOps<K>::is_zero(row[lead])) continue;
      const K c = row[lead];
      for (size_t j = 0; j < cols_; ++j)
        if (!FieldOps<K>::is_zero(v[j])) row[j] -= c * v[j];
    }
    size_t pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  bool contains(const Vec<K>& v) const { return is_zero_vec(reduce(v)); }

  /// Coordinates of v in the pivot-row basis, or nullopt when v is outside the span.
  std::optional<Vec<K>> coordinates(const Vec<K>& v) const {
    Vec<K> coeff(rows_.size(), K(0));
    Vec<K> w = v;
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (FieldOps<K>::is_zero(w[pivots_[r]])) continue;
      const K c = w[pivots_[r]];
      coeff[r] = c;
      for (size_t j = 0; j < cols_; ++j)
        if (!FieldOps<K>::is_zero(rows_[r][j])) w[j] -= c * rows_[r][j];
    }
    if (!is_zero_vec(w)) return std::nullopt;
    return coeff;
  }

 private:
  size_t cols_;
  std::vector<Vec<K>> rows_;
  std::vector<size_t> pivots_;
};

template <class K>
RowSpan<K> row_span_of(const Matrix<K>& m) {
  RowSpan<K> s(m.cols());
  for (size_t i = 0; i < m.rows(); ++i) s.insert(m.row(i));
  return s;
}

template <class K>
size_t rank(const Matrix<K>& m) {
  return row_span_of(m).rank();
}

/// Basis of the null space {x : m x = 0}, one vector per free column,
/// normalized so the free coordinate is 1.
template <class K>
std::vector<Vec<K>> kernel_basis(const Matrix<K>& m) {
  RowSpan<K> s = row_span_of(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : s.pivot_cols()) is_pivot[p] = true;
  std::vector<Vec<K>> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v(m.cols(), K(0));
    v[f] = K(1);
    for (size_t r = 0; r < s.rank(); ++r) v[s.pivot_cols()[r]] = -s.rows()[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of A x = b (free variables set to 0), or nullopt.
template <class K>
std::optional<Vec<K>> solve(const Matrix<K>& a, const Vec<K>& b) {
  RowSpan<K> s(a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    Vec<K> row = a.row(i);
    row.push_back(b[i]);
    s.insert(std::move(row));
  }
  Vec<K> x(a.cols(), K(0));
  for (size_t r = 0; r < s.rank(); ++r) {
    size_t p = s.pivot_cols()[r];
    if (p == a.cols()) return std::nullopt;  // pivot in the rhs column
    x[p] = s.rows()[r][a.cols()];
  }
  // Check: any row of A outside the pivot structure must be consistent.
  for (size_t i = 0; i < a.rows(); ++i) {
    K acc = K(0) - b[i];
    for (size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == K(0))) acc += a(i, j) * x[j];
    if (!(acc == K(0))) return std::nullopt;
  }
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  size_t n = m.rows();
  RowSpan<K> s(2 * n);
  for (size_t i = 0; i < n; ++i) {
    Vec<K> row(2 * n, K(0));
    for (size_t j = 0; j < n; ++j) row[j] = m(i, j);
    row[n + i] = K(1);
    s.insert(std::move(row));
  }
  if (s.rank() != n) return std::nullopt;
  for (size_t r = 0; r < n; ++r)
    if (s.pivot_cols()[r] != r) return std::nullopt;
  Matrix<K> inv(n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t j = 0; j < n; ++j) inv(r, j) = s.rows()[r][n + j];
  return inv;
}

template <class K>
K det(Matrix<K> m) {
  if (m.rows() != m.cols()) throw Error("SHAPE", "determinant of non-square matrix");
  size_t n = m.rows();
  K d = K(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t r = col; r < n; ++r)
      if (!(m(r, col) == K(0))) {
        piv = r;
        break;
      }
    if (piv == n) return K(0);
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = K(0) - d;
    }
    d *= m(col, col);
    K inv = K(1) / m(col, col);
    for (size_t r = col + 1; r < n; ++r) {
      K f = m(r, col) * inv;
      if (f == K(0)) continue;
      for (size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return d;
}

/// Stacks a list of vectors as the rows of a matrix.
template <class K>
Matrix<K> rows_matrix(const std::vector<Vec<K>>& rows, size_t cols) {
  Matrix<K> m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace superbim
