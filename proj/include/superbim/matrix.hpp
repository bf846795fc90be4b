#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "superbim/scalar.hpp"

namespace superbim {

/// Dense matrix over an exact field (or double, for the numeric paths).
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

  Matrix(std::initializer_list<std::initializer_list<K>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      assert(row.size() == cols_);
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  K& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix& operator+=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const K& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const K& s) { return a *= s; }
  friend Matrix operator*(const K& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix out(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (FieldOps<K>::is_zero(aik)) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          const K& bkj = b(k, j);
          if (FieldOps<K>::is_zero(bkj)) continue;
          out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  Vec<K> apply(const Vec<K>& v) const {
    assert(v.size() == cols_);
    Vec<K> out(rows_, K(0));
    for (size_t j = 0; j < cols_; ++j) {
      if (FieldOps<K>::is_zero(v[j])) continue;
      for (size_t i = 0; i < rows_; ++i) {
        const K& a = (*this)(i, j);
        if (!FieldOps<K>::is_zero(a)) out[i] += a * v[j];
      }
    }
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!FieldOps<K>::is_zero(x)) return false;
    return true;
  }

  Vec<K> col(size_t c) const {
    Vec<K> out(rows_);
    for (size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
  }
  Vec<K> row(size_t r) const {
    Vec<K> out(cols_);
    for (size_t j = 0; j < cols_; ++j) out[j] = (*this)(r, j);
    return out;
  }
  void set_col(size_t c, const Vec<K>& v) {
    assert(v.size() == rows_);
    for (size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
  }

  /// Row-major flattening; the usual vectorization for "matrix as unknown" solves.
  Vec<K> vectorize() const { return data_; }
  static Matrix from_vector(size_t rows, size_t cols, const Vec<K>& v) {
    assert(v.size() == rows * cols);
    Matrix m(rows, cols);
    m.data_ = v;
    return m;
  }

  friend Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < a.cols_; ++j) {
        const K& aij = a(i, j);
        if (aij == K(0)) continue;
        for (size_t p = 0; p < b.rows_; ++p)
          for (size_t q = 0; q < b.cols_; ++q) {
            const K& bpq = b(p, q);
            if (bpq == K(0)) continue;
            out(i * b.rows_ + p, j * b.cols_ + q) = aij * bpq;
          }
      }
    return out;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Vec<K> operator+(Vec<K> a, const Vec<K>& b) {
  assert(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class K>
Vec<K> operator-(Vec<K> a, const Vec<K>& b) {
  assert(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class K>
Vec<K> operator*(const K& s, Vec<K> a) {
  for (auto& x : a) x *= s;
  return a;
}

template <class K>
bool is_zero_vec(const Vec<K>& v) {
  for (const auto& x : v)
    if (!(x == K(0))) return false;
  return true;
}

template <class K>
Vec<K> unit_vec(size_t n, size_t i) {
  Vec<K> v(n, K(0));
  v[i] = K(1);
  return v;
}

}  // namespace superbim
