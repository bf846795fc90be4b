#pragma once

#include <cmath>
#include <cstdlib>

#include "superbim/linalg.hpp"

namespace superbim {

/// Smallest k <= dim with m^k = 0, or 0 when m is not nilpotent.
template <class K>
size_t nilpotency_index(const Matrix<K>& m) {
  if (m.is_zero()) return 1;
  Matrix<K> p = m;
  for (size_t k = 1; k <= m.rows(); ++k) {
    if (p.is_zero()) return k;
    p = p * m;
  }
  return p.is_zero() ? m.rows() + 1 : 0;
}

/// Exact exponential of a nilpotent matrix (finite series).
template <class K>
Matrix<K> matrix_exp_nilpotent(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw Error("SHAPE", "exp of non-square matrix");
  size_t idx = nilpotency_index(m);
  if (idx == 0) throw Error("NOT_NILPOTENT", "matrix is not nilpotent");
  Matrix<K> out = Matrix<K>::identity(m.rows());
  Matrix<K> term = Matrix<K>::identity(m.rows());
  K fact = K(1);
  for (size_t k = 1; k < idx; ++k) {
    term = term * m;
    fact *= K(static_cast<long>(k));
    out += term * (K(1) / fact);
  }
  return out;
}

inline double max_abs(const Matrix<double>& m) {
  double v = 0;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) v = std::max(v, std::fabs(m(i, j)));
  return v;
}

/// Scaling-and-squaring exponential; the series tail is summed until it drops
/// below tol, scaled back to account for the squarings.
inline Matrix<double> matrix_exp_numeric(const Matrix<double>& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) throw Error("SHAPE", "exp of non-square matrix");
  int s = 0;
  double norm = max_abs(m) * m.rows();
  while (norm > 0.5) {
    norm /= 2;
    ++s;
  }
  Matrix<double> a = m;
  double scale = std::ldexp(1.0, -s);
  a *= scale;
  Matrix<double> out = Matrix<double>::identity(m.rows());
  Matrix<double> term = Matrix<double>::identity(m.rows());
  double series_tol = tol * std::ldexp(1.0, -s) / (m.rows() ? m.rows() : 1);
  for (int k = 1; k < 64; ++k) {
    term = term * a;
    term *= 1.0 / k;
    out += term;
    if (max_abs(term) < series_tol) break;
  }
  for (int i = 0; i < s; ++i) out = out * out;
  return out;
}

template <class K>
Matrix<double> to_double(const Matrix<K>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = FieldOps<K>::to_real(m(i, j));
  return out;
}

}  // namespace superbim
