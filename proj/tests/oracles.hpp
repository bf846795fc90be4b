// Test-only oracles, independent of the library's elimination and search
// paths: a fraction-free rank, a naive kernel dimension, a series exponential,
// and brute-force structure checks. These pin expected values for the
// derived test cases.
#pragma once

#include <superbim/superbim.hpp>

namespace oracles {

using superbim::Matrix;
using superbim::Rational;
using superbim::Vec;

/// Rank by fraction-free Bareiss elimination (different pivoting and
/// arithmetic route than the library's reduced row echelon form).
inline size_t bareiss_rank(Matrix<Rational> m) {
  using superbim::BigInt;
  size_t rows = m.rows(), cols = m.cols();
  // Clear denominators rowwise.
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (size_t i = 0; i < rows; ++i) {
    BigInt l = 1;
    for (size_t j = 0; j < cols; ++j) l = lcm(l, denominator(m(i, j)));
    for (size_t j = 0; j < cols; ++j) a[i][j] = numerator(m(i, j) * Rational(l));
  }
  size_t rank = 0;
  BigInt prev = 1;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rows;
    for (size_t r = rank; r < rows; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    for (size_t r = rank + 1; r < rows; ++r) {
      for (size_t c = col + 1; c < cols; ++c)
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

inline size_t kernel_dim(const Matrix<Rational>& m) { return m.cols() - bareiss_rank(m); }

/// Plain truncated-series matrix exponential in doubles.
inline Matrix<double> series_exp(const Matrix<double>& m, int terms = 48) {
  Matrix<double> out = Matrix<double>::identity(m.rows());
  Matrix<double> term = Matrix<double>::identity(m.rows());
  for (int k = 1; k < terms; ++k) {
    term = term * m;
    term *= 1.0 / k;
    out += term;
  }
  return out;
}

/// Dimension of the space of even elements commuting with the whole algebra,
/// counted by a direct dense solve.
template <class K>
size_t even_center_dim(const superbim::SuperAlgebra<K>& a) {
  size_t n = a.dim();
  std::vector<Vec<K>> rows;
  for (size_t g = 0; g < n; ++g) {
    Matrix<K> op = a.lmul_basis(g) - a.rmul_basis(g);
    for (size_t r = 0; r < n; ++r) rows.push_back(op.row(r));
  }
  for (size_t i = 0; i < n; ++i)
    if (a.space.parity[i]) {
      Vec<K> row(n, K(0));
      row[i] = K(1);
      rows.push_back(row);
    }
  return superbim::kernel_basis(superbim::rows_matrix(rows, n)).size();
}

/// Brute-force check that a subspace is a two-sided ideal with vanishing
/// power (up to dim-many products).
template <class K>
bool is_nilpotent_ideal(const superbim::SuperAlgebra<K>& a, const std::vector<Vec<K>>& basis) {
  superbim::RowSpan<K> span(a.dim());
  for (const auto& v : basis) span.insert(v);
  for (size_t g = 0; g < a.dim(); ++g)
    for (const auto& v : basis) {
      if (!span.contains(a.mul(superbim::unit_vec<K>(a.dim(), g), v))) return false;
      if (!span.contains(a.mul(v, superbim::unit_vec<K>(a.dim(), g)))) return false;
    }
  // Power up the subspace until it dies.
  std::vector<Vec<K>> current = basis;
  for (size_t k = 0; k < a.dim(); ++k) {
    std::vector<Vec<K>> next;
    superbim::RowSpan<K> nspan(a.dim());
    for (const auto& x : current)
      for (const auto& y : basis) {
        Vec<K> p = a.mul(x, y);
        if (nspan.insert(p)) next.push_back(p);
      }
    if (next.empty()) return true;
    current = std::move(next);
  }
  return false;
}

}  // namespace oracles
