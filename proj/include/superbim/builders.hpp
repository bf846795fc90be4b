#pragma once

#include <memory>
#include <string>
#include <vector>

#include "superbim/algebra.hpp"

namespace superbim {

template <class K>
AlgebraPtr<K> make_algebra(SuperAlgebra<K> a) {
  return std::make_shared<const SuperAlgebra<K>>(std::move(a));
}

/// The ground field as a one-dimensional algebra.
template <class K>
AlgebraPtr<K> field_algebra(const std::string& name = "k") {
  SuperAlgebra<K> a;
  a.space = GradedSpace::even(1);
  a.space.labels = {"1"};
  a.structure.assign(1, K(1));
  a.unit = {K(1)};
  a.name = name;
  return make_algebra(std::move(a));
}

/// Full matrix algebra M_n(k), purely even, basis of matrix units E_uv.
template <class K>
AlgebraPtr<K> matrix_algebra(size_t n) {
  SuperAlgebra<K> a;
  a.space = GradedSpace::even(n * n);
  size_t d = n * n;
  a.structure.assign(d * d * d, K(0));
  a.unit.assign(d, K(0));
  auto idx = [n](size_t u, size_t v) { return u * n + v; };
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) {
      a.space.labels.push_back("E" + std::to_string(u) + std::to_string(v));
      for (size_t w = 0; w < n; ++w)
        for (size_t z = 0; z < n; ++z)
          if (v == w) a.c(idx(u, v), idx(w, z), idx(u, z)) = K(1);
    }
  for (size_t u = 0; u < n; ++u) a.unit[idx(u, u)] = K(1);
  a.name = "M" + std::to_string(n);
  return make_algebra(std::move(a));
}

/// End(k^{r|s}) with the block grading: E_uv is odd iff u, v straddle the
/// even/odd split.
template <class K>
AlgebraPtr<K> graded_matrix_algebra(size_t r, size_t s) {
  size_t n = r + s;
  auto base = matrix_algebra<K>(n);
  SuperAlgebra<K> a = *base;
  auto idx = [n](size_t u, size_t v) { return u * n + v; };
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v)
      a.space.parity[idx(u, v)] = static_cast<uint8_t>(((u >= r) + (v >= r)) & 1);
  a.name = "M" + std::to_string(r) + "|" + std::to_string(s);
  return make_algebra(std::move(a));
}

namespace detail {

/// Multiplies basis blades indexed by bitmasks; square_sign(i) is e_i^2
/// (+1/-1 for Clifford generators, 0 for exterior ones).
template <class K>
std::pair<K, size_t> blade_product(size_t s, size_t t, size_t ngen,
                                   const std::vector<int>& square_sign) {
  K sign = K(1);
  size_t acc = s;
  for (size_t g = 0; g < ngen; ++g) {
    if (!(t & (size_t(1) << g))) continue;
    // Move generator g from the left of the right factor through acc's
    // generators above g.
    size_t higher = acc >> (g + 1);
    int swaps = 0;
    while (higher) {
      swaps += static_cast<int>(higher & 1);
      higher >>= 1;
    }
    if (swaps & 1) sign = -sign;
    if (acc & (size_t(1) << g)) {
      if (square_sign[g] == 0) return {K(0), 0};
      if (square_sign[g] < 0) sign = -sign;
      acc &= ~(size_t(1) << g);
    } else {
      acc |= size_t(1) << g;
    }
  }
  return {sign, acc};
}

template <class K>
AlgebraPtr<K> blade_algebra(size_t ngen, const std::vector<int>& square_sign,
                            const std::string& name, const std::string& gen_prefix) {
  size_t d = size_t(1) << ngen;
  SuperAlgebra<K> a;
  a.space.parity.resize(d);
  a.structure.assign(d * d * d, K(0));
  for (size_t s = 0; s < d; ++s) {
    int bits = 0;
    std::string lab;
    for (size_t g = 0; g < ngen; ++g)
      if (s & (size_t(1) << g)) {
        ++bits;
        lab += gen_prefix + std::to_string(g + 1);
      }
    a.space.parity[s] = static_cast<uint8_t>(bits & 1);
    a.space.labels.push_back(lab.empty() ? "1" : lab);
  }
  for (size_t s = 0; s < d; ++s)
    for (size_t t = 0; t < d; ++t) {
      auto [sign, out] = blade_product<K>(s, t, ngen, square_sign);
      if (!(sign == K(0))) a.c(s, t, out) = sign;
    }
  a.unit.assign(d, K(0));
  a.unit[0] = K(1);
  a.name = name;
  return make_algebra(std::move(a));
}

}  // namespace detail

/// Exterior algebra on n odd generators squaring to zero.
template <class K>
AlgebraPtr<K> exterior_algebra(size_t n) {
  return detail::blade_algebra<K>(n, std::vector<int>(n, 0),
                                  "Lambda" + std::to_string(n), "e");
}

/// Clifford algebra Cl_{p,q}: odd anticommuting generators, the first p
/// squaring to +1 and the last q to -1.
template <class K>
AlgebraPtr<K> clifford_algebra(size_t p, size_t q) {
  std::vector<int> sq(p + q, 1);
  for (size_t i = p; i < p + q; ++i) sq[i] = -1;
  return detail::blade_algebra<K>(p + q, sq, "Cl" + std::to_string(p) + "," + std::to_string(q),
                                  "e");
}

/// Complex Clifford algebra CCl_n (over the Gaussian rationals all generator
/// squares may be taken +1).
inline AlgebraPtr<Gaussian> complex_clifford_algebra(size_t n) {
  SuperAlgebra<Gaussian> a =
      *detail::blade_algebra<Gaussian>(n, std::vector<int>(n, 1), "CCl" + std::to_string(n), "e");
  return make_algebra(std::move(a));
}

template <class K>
AlgebraPtr<K> direct_sum(const AlgebraPtr<K>& x, const AlgebraPtr<K>& y) {
  size_t nx = x->dim(), ny = y->dim(), n = nx + ny;
  SuperAlgebra<K> a;
  a.space = sum_space(x->space, y->space);
  a.structure.assign(n * n * n, K(0));
  for (size_t i = 0; i < nx; ++i)
    for (size_t j = 0; j < nx; ++j)
      for (size_t k = 0; k < nx; ++k) a.c(i, j, k) = x->c(i, j, k);
  for (size_t i = 0; i < ny; ++i)
    for (size_t j = 0; j < ny; ++j)
      for (size_t k = 0; k < ny; ++k) a.c(nx + i, nx + j, nx + k) = y->c(i, j, k);
  a.unit.assign(n, K(0));
  for (size_t i = 0; i < nx; ++i) a.unit[i] = x->unit[i];
  for (size_t i = 0; i < ny; ++i) a.unit[nx + i] = y->unit[i];
  a.name = x->name + "+" + y->name;
  return make_algebra(std::move(a));
}

/// Opposite algebra with the Koszul-signed product a *op b = (-1)^{|a||b|} ba.
template <class K>
AlgebraPtr<K> opposite_algebra(const AlgebraPtr<K>& x) {
  size_t n = x->dim();
  SuperAlgebra<K> a;
  a.space = x->space;
  a.structure.assign(n * n * n, K(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      K sign = parity_sign<K>(x->space.parity[i] & x->space.parity[j]);
      for (size_t k = 0; k < n; ++k) {
        const K& cc = x->c(j, i, k);
        if (!(cc == K(0))) a.c(i, j, k) = sign * cc;
      }
    }
  a.unit = x->unit;
  a.name = x->name + "^op";
  return make_algebra(std::move(a));
}

/// Grading automorphism a -> (-1)^{|a|} a.
template <class K>
AlgebraHom<K> grading_automorphism(const AlgebraPtr<K>& x) {
  Matrix<K> m(x->dim(), x->dim());
  for (size_t i = 0; i < x->dim(); ++i) m(i, i) = parity_sign<K>(x->space.parity[i]);
  return AlgebraHom<K>{x, x, std::move(m)};
}

/// Graded tensor product: (a (x) a')(b (x) b') = (-1)^{|a'||b|} ab (x) a'b'.
template <class K>
AlgebraPtr<K> graded_tensor(const AlgebraPtr<K>& x, const AlgebraPtr<K>& y) {
  size_t nx = x->dim(), ny = y->dim(), n = nx * ny;
  SuperAlgebra<K> a;
  a.space = tensor_space(x->space, y->space);
  for (size_t i = 0; i < nx; ++i)
    for (size_t ip = 0; ip < ny; ++ip)
      a.space.labels.push_back(x->space.label(i) + "*" + y->space.label(ip));
  a.structure.assign(n * n * n, K(0));
  for (size_t i = 0; i < nx; ++i)
    for (size_t ip = 0; ip < ny; ++ip)
      for (size_t j = 0; j < nx; ++j)
        for (size_t jp = 0; jp < ny; ++jp) {
          K sign = parity_sign<K>(y->space.parity[ip] & x->space.parity[j]);
          for (size_t k = 0; k < nx; ++k) {
            const K& cx = x->c(i, j, k);
            if (cx == K(0)) continue;
            for (size_t kp = 0; kp < ny; ++kp) {
              const K& cy = y->c(ip, jp, kp);
              if (!(cy == K(0)))
                a.c(i * ny + ip, j * ny + jp, k * ny + kp) = sign * cx * cy;
            }
          }
        }
  a.unit.assign(n, K(0));
  for (size_t i = 0; i < nx; ++i)
    for (size_t ip = 0; ip < ny; ++ip)
      if (!(x->unit[i] == K(0)) && !(y->unit[ip] == K(0)))
        a.unit[i * ny + ip] = x->unit[i] * y->unit[ip];
  a.name = x->name + "(x)" + y->name;
  return make_algebra(std::move(a));
}

/// Quotient algebra by a two-sided graded ideal given by spanning vectors.
template <class K>
std::pair<AlgebraPtr<K>, QuotientPresentation<K>> quotient_algebra(
    const SuperAlgebra<K>& a, const std::vector<Vec<K>>& ideal) {
  QuotientPresentation<K> q = quotient_with_section<K>(a.space, ideal);
  size_t m = q.dim();
  SuperAlgebra<K> out;
  out.space = q.quotient;
  out.structure.assign(m * m * m, K(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Vec<K> prod = q.project(a.mul(q.section.col(i), q.section.col(j)));
      for (size_t k = 0; k < m; ++k) out.c(i, j, k) = prod[k];
    }
  out.unit = q.project(a.unit);
  out.name = a.name + "/J";
  return {make_algebra(std::move(out)), std::move(q)};
}

}  // namespace superbim
