#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superbim/graded.hpp"
#include "superbim/linalg.hpp"
#include "superbim/quotient.hpp"
#include "superbim/report.hpp"

namespace superbim {

/// Finite-dimensional Z2-graded unital associative algebra, given by exact
/// structure constants: e_i * e_j = sum_k c[i][j][k] e_k.
template <class K>
struct SuperAlgebra {
  GradedSpace space;
  std::vector<K> structure;  // flat, index (i*n + j)*n + k
  Vec<K> unit;
  std::string name;

  size_t dim() const { return space.dim(); }

  const K& c(size_t i, size_t j, size_t k) const {
    return structure[(i * dim() + j) * dim() + k];
  }
  K& c(size_t i, size_t j, size_t k) { return structure[(i * dim() + j) * dim() + k]; }

  Vec<K> mul(const Vec<K>& x, const Vec<K>& y) const {
    const size_t n = dim();
    Vec<K> out(n, K(0));
    for (size_t i = 0; i < n; ++i) {
      if (x[i] == K(0)) continue;
      for (size_t j = 0; j < n; ++j) {
        if (y[j] == K(0)) continue;
        K f = x[i] * y[j];
        for (size_t k = 0; k < n; ++k) {
          const K& cc = c(i, j, k);
          if (!(cc == K(0))) out[k] += f * cc;
        }
      }
    }
    return out;
  }

  /// Left multiplication operator L_x with (L_x)(k, j) = coefficient of e_k in x*e_j.
  Matrix<K> lmul(const Vec<K>& x) const {
    const size_t n = dim();
    Matrix<K> m(n, n);
    for (size_t i = 0; i < n; ++i) {
      if (x[i] == K(0)) continue;
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
          const K& cc = c(i, j, k);
          if (!(cc == K(0))) m(k, j) += x[i] * cc;
        }
    }
    return m;
  }

  Matrix<K> rmul(const Vec<K>& x) const {
    const size_t n = dim();
    Matrix<K> m(n, n);
    for (size_t j = 0; j < n; ++j) {
      if (x[j] == K(0)) continue;
      for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
          const K& cc = c(i, j, k);
          if (!(cc == K(0))) m(k, i) += x[j] * cc;
        }
    }
    return m;
  }

  Matrix<K> lmul_basis(size_t i) const { return lmul(unit_vec<K>(dim(), i)); }
  Matrix<K> rmul_basis(size_t i) const { return rmul(unit_vec<K>(dim(), i)); }

  bool is_unit_element(const Vec<K>& v) const { return v == unit; }
};

template <class K>
using AlgebraPtr = std::shared_ptr<const SuperAlgebra<K>>;

/// Structural identity of algebras: same constants, parities, and unit.
template <class K>
bool same_algebra(const SuperAlgebra<K>& a, const SuperAlgebra<K>& b) {
  return a.space.parity == b.space.parity && a.structure == b.structure && a.unit == b.unit;
}

template <class K>
bool same_algebra(const AlgebraPtr<K>& a, const AlgebraPtr<K>& b) {
  return a == b || same_algebra(*a, *b);
}

template <class K>
Report validate_algebra(const SuperAlgebra<K>& a) {
  Report rep;
  rep.subject = a.name.empty() ? "algebra" : a.name;
  const size_t n = a.dim();

  bool grading_ok = true;
  std::string grading_witness;
  for (size_t i = 0; i < n && grading_ok; ++i)
    for (size_t j = 0; j < n && grading_ok; ++j)
      for (size_t k = 0; k < n; ++k)
        if (!(a.c(i, j, k) == K(0)) &&
            ((a.space.parity[i] + a.space.parity[j]) & 1) != a.space.parity[k]) {
          grading_ok = false;
          grading_witness = "c(" + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ") violates parity additivity";
          break;
        }
  rep.add("GRADING", grading_ok, grading_witness);

  bool unit_ok = is_homogeneous(a.space, a.unit) &&
                 [&] {
                   uint8_t p;
                   is_homogeneous(a.space, a.unit, &p);
                   return p == 0;
                 }();
  for (size_t j = 0; j < n && unit_ok; ++j) {
    Vec<K> ej = unit_vec<K>(n, j);
    if (a.mul(a.unit, ej) != ej || a.mul(ej, a.unit) != ej) unit_ok = false;
  }
  rep.add("UNIT", unit_ok, unit_ok ? "" : "unit is not an even two-sided identity");

  bool assoc_ok = true;
  std::string assoc_witness;
  for (size_t i = 0; i < n && assoc_ok; ++i) {
    Vec<K> ei = unit_vec<K>(n, i);
    for (size_t j = 0; j < n && assoc_ok; ++j) {
      Vec<K> eij = a.mul(ei, unit_vec<K>(n, j));
      for (size_t k = 0; k < n; ++k) {
        Vec<K> lhs = a.mul(eij, unit_vec<K>(n, k));
        Vec<K> rhs = a.mul(ei, a.mul(unit_vec<K>(n, j), unit_vec<K>(n, k)));
        if (lhs != rhs) {
          assoc_ok = false;
          assoc_witness = "ASSOCIATIVITY fails at triple (" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) + ")";
          break;
        }
      }
    }
  }
  rep.add("ASSOCIATIVITY", assoc_ok, assoc_witness);
  return rep;
}

/// Even algebra homomorphism given by its matrix (target_dim x source_dim).
template <class K>
struct AlgebraHom {
  AlgebraPtr<K> source, target;
  Matrix<K> matrix;

  Vec<K> apply(const Vec<K>& v) const { return matrix.apply(v); }
  Vec<K> apply_basis(size_t i) const { return matrix.col(i); }
  bool is_endo() const { return same_algebra(source, target); }
};

template <class K>
Report validate_hom(const AlgebraHom<K>& h) {
  Report rep;
  rep.subject = "hom";
  const auto& A = *h.source;
  const auto& B = *h.target;
  bool shape_ok = h.matrix.rows() == B.dim() && h.matrix.cols() == A.dim();
  rep.add("SHAPE", shape_ok);
  if (!shape_ok) return rep;

  bool parity_ok = true;
  for (size_t j = 0; j < A.dim() && parity_ok; ++j)
    for (size_t i = 0; i < B.dim(); ++i)
      if (!(h.matrix(i, j) == K(0)) && B.space.parity[i] != A.space.parity[j]) {
        parity_ok = false;
        break;
      }
  rep.add("PARITY", parity_ok);

  rep.add("UNIT", h.apply(A.unit) == B.unit);

  bool mult_ok = true;
  std::string witness;
  for (size_t i = 0; i < A.dim() && mult_ok; ++i)
    for (size_t j = 0; j < A.dim(); ++j) {
      Vec<K> lhs = h.apply(A.mul(unit_vec<K>(A.dim(), i), unit_vec<K>(A.dim(), j)));
      Vec<K> rhs = B.mul(h.apply_basis(i), h.apply_basis(j));
      if (lhs != rhs) {
        mult_ok = false;
        witness = "not multiplicative at pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        break;
      }
    }
  rep.add("MULTIPLICATIVE", mult_ok, witness);
  return rep;
}

template <class K>
AlgebraHom<K> identity_hom(const AlgebraPtr<K>& a) {
  return AlgebraHom<K>{a, a, Matrix<K>::identity(a->dim())};
}

template <class K>
AlgebraHom<K> compose_homs(const AlgebraHom<K>& outer, const AlgebraHom<K>& inner) {
  if (!same_algebra(outer.source, inner.target))
    throw Error("TYPE", "homomorphisms not composable");
  return AlgebraHom<K>{inner.source, outer.target, outer.matrix * inner.matrix};
}

template <class K>
std::optional<AlgebraHom<K>> inverse_hom(const AlgebraHom<K>& h) {
  auto inv = inverse(h.matrix);
  if (!inv) return std::nullopt;
  return AlgebraHom<K>{h.target, h.source, *inv};
}

/// Inner automorphism i(g): x -> g x g^{-1} for an invertible even g.
template <class K>
AlgebraHom<K> inner_automorphism(const AlgebraPtr<K>& a, const Vec<K>& g) {
  auto linv = inverse(a->lmul(g));
  if (!linv) throw Error("NOT_INVERTIBLE", "inner automorphism of a non-unit");
  Vec<K> ginv = linv->apply(a->unit);
  return AlgebraHom<K>{a, a, a->lmul(g) * a->rmul(ginv)};
}

/// Even derivation of an algebra (parity-preserving matrix, Leibniz rule).
template <class K>
struct Derivation {
  AlgebraPtr<K> algebra;
  Matrix<K> matrix;
};

template <class K>
Report validate_derivation(const Derivation<K>& d) {
  Report rep;
  rep.subject = "derivation";
  const auto& A = *d.algebra;
  bool parity_ok = true;
  for (size_t i = 0; i < A.dim() && parity_ok; ++i)
    for (size_t j = 0; j < A.dim(); ++j)
      if (!(d.matrix(i, j) == K(0)) && A.space.parity[i] != A.space.parity[j]) {
        parity_ok = false;
        break;
      }
  rep.add("PARITY", parity_ok);
  bool leibniz = true;
  std::string witness;
  for (size_t i = 0; i < A.dim() && leibniz; ++i)
    for (size_t j = 0; j < A.dim(); ++j) {
      Vec<K> ei = unit_vec<K>(A.dim(), i), ej = unit_vec<K>(A.dim(), j);
      Vec<K> lhs = d.matrix.apply(A.mul(ei, ej));
      Vec<K> rhs = A.mul(d.matrix.apply(ei), ej) + A.mul(ei, d.matrix.apply(ej));
      if (lhs != rhs) {
        leibniz = false;
        witness = "Leibniz fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        break;
      }
    }
  rep.add("LEIBNIZ", leibniz, witness);
  return rep;
}

// ---------------------------------------------------------------------------
// Structural analysis
// ---------------------------------------------------------------------------

template <class K>
struct Centers {
  std::vector<Vec<K>> z;    // ordinary center
  std::vector<Vec<K>> z0;   // its even part
  std::vector<Vec<K>> sz;   // supercenter
};

namespace detail {

/// Kernel of a family of n x n operators, restricted to coordinates with the
/// given parity (pass 2 for "no restriction").
template <class K>
std::vector<Vec<K>> joint_kernel(const std::vector<Matrix<K>>& ops, const GradedSpace& sp,
                                 int parity_filter) {
  const size_t n = sp.dim();
  std::vector<size_t> keep;
  for (size_t i = 0; i < n; ++i)
    if (parity_filter == 2 || sp.parity[i] == parity_filter) keep.push_back(i);
  Matrix<K> sys(ops.size() * n, keep.size());
  for (size_t o = 0; o < ops.size(); ++o)
    for (size_t r = 0; r < n; ++r)
      for (size_t t = 0; t < keep.size(); ++t) sys(o * n + r, t) = ops[o](r, keep[t]);
  std::vector<Vec<K>> small = kernel_basis(sys);
  std::vector<Vec<K>> out;
  for (const auto& s : small) {
    Vec<K> v(n, K(0));
    for (size_t t = 0; t < keep.size(); ++t) v[keep[t]] = s[t];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

template <class K>
Centers<K> center_parts(const SuperAlgebra<K>& a) {
  const size_t n = a.dim();
  Centers<K> out;
  std::vector<Matrix<K>> comm;
  for (size_t i = 0; i < n; ++i) comm.push_back(a.lmul_basis(i) - a.rmul_basis(i));
  out.z = detail::joint_kernel(comm, a.space, 2);
  out.z0 = detail::joint_kernel(comm, a.space, 0);
  // Supercommutator system, solved separately on each parity block of the
  // unknown: x e_b = (-1)^{|x||b|} e_b x.
  for (int p = 0; p <= 1; ++p) {
    std::vector<Matrix<K>> sc;
    for (size_t b = 0; b < n; ++b) {
      K sign = parity_sign<K>(static_cast<uint8_t>(p & a.space.parity[b]));
      sc.push_back(a.rmul_basis(b) - sign * a.lmul_basis(b));
    }
    for (auto& v : detail::joint_kernel(sc, a.space, p)) out.sz.push_back(std::move(v));
  }
  return out;
}

template <class K>
struct StructureReport {
  size_t dim = 0;
  size_t dim_center = 0, dim_even_center = 0, dim_supercenter = 0;
  std::vector<Vec<K>> radical_basis;
  bool is_semisimple = false;
  bool is_central_simple = false;
  size_t dim_der = 0, dim_innder = 0, hh1_dim = 0;
};

/// Radical as the kernel of the trace form (x, y) -> tr(L_x L_y) of the left
/// regular representation; exact over characteristic zero.
template <class K>
std::vector<Vec<K>> radical_basis(const SuperAlgebra<K>& a) {
  const size_t n = a.dim();
  Matrix<K> gram(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      K acc = K(0);
      for (size_t t = 0; t < n; ++t)
        for (size_t k = 0; k < n; ++k) {
          const K& cit = a.c(i, t, k);
          if (cit == K(0)) continue;
          const K& cjk = a.c(j, k, t);
          if (!(cjk == K(0))) acc += cit * cjk;
        }
      gram(i, j) = acc;
    }
  return kernel_basis(gram);
}

template <class K>
struct DerivationInfo {
  std::vector<Matrix<K>> der_basis;
  std::vector<Matrix<K>> inner_basis;
  size_t hh1_dim = 0;
};

/// Even derivations and inner derivations ad(a), a even; hh1 = der - inner.
template <class K>
DerivationInfo<K> derivations_hh1(const SuperAlgebra<K>& a) {
  const size_t n = a.dim();
  // Unknowns: parity-preserving entries D(k, l).
  std::vector<std::pair<size_t, size_t>> slots;
  std::vector<long> slot_of(n * n, -1);
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l)
      if (a.space.parity[k] == a.space.parity[l]) {
        slot_of[k * n + l] = static_cast<long>(slots.size());
        slots.emplace_back(k, l);
      }
  auto slot_index = [&](size_t k, size_t l) -> long { return slot_of[k * n + l]; };

  // Leibniz at (i, j), output coordinate r:
  //   sum_k c(i,j,k) D(r,k) - sum_l D(l,i) c(l,j,r) - sum_l D(l,j) c(i,l,r) = 0.
  RowSpan<K> rowspace(slots.size());
  std::vector<Vec<K>> rows;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t r = 0; r < n; ++r) {
        Vec<K> row(slots.size(), K(0));
        bool nonzero = false;
        for (size_t k = 0; k < n; ++k) {
          const K& cc = a.c(i, j, k);
          if (cc == K(0)) continue;
          long s = slot_index(r, k);
          if (s >= 0) {
            row[s] += cc;
            nonzero = true;
          }
        }
        for (size_t l = 0; l < n; ++l) {
          const K& c1 = a.c(l, j, r);
          if (!(c1 == K(0))) {
            long s = slot_index(l, i);
            if (s >= 0) {
              row[s] -= c1;
              nonzero = true;
            }
          }
          const K& c2 = a.c(i, l, r);
          if (!(c2 == K(0))) {
            long s = slot_index(l, j);
            if (s >= 0) {
              row[s] -= c2;
              nonzero = true;
            }
          }
        }
        if (nonzero) rowspace.insert(std::move(row));
      }

  // Kernel of the accumulated row space.
  std::vector<bool> is_pivot(slots.size(), false);
  for (size_t p : rowspace.pivot_cols()) is_pivot[p] = true;
  DerivationInfo<K> out;
  for (size_t f = 0; f < slots.size(); ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v(slots.size(), K(0));
    v[f] = K(1);
    for (size_t r = 0; r < rowspace.rank(); ++r)
      v[rowspace.pivot_cols()[r]] = -rowspace.rows()[r][f];
    Matrix<K> d(n, n);
    for (size_t s = 0; s < slots.size(); ++s) d(slots[s].first, slots[s].second) = v[s];
    out.der_basis.push_back(std::move(d));
  }

  RowSpan<K> inner_span(n * n);
  for (size_t i = 0; i < n; ++i) {
    if (a.space.parity[i] != 0) continue;
    Matrix<K> ad = a.lmul_basis(i) - a.rmul_basis(i);
    if (inner_span.insert(ad.vectorize())) out.inner_basis.push_back(std::move(ad));
  }
  out.hh1_dim = out.der_basis.size() - out.inner_basis.size();
  return out;
}

template <class K>
StructureReport<K> structure_report(const SuperAlgebra<K>& a) {
  StructureReport<K> r;
  r.dim = a.dim();
  Centers<K> c = center_parts(a);
  r.dim_center = c.z.size();
  r.dim_even_center = c.z0.size();
  r.dim_supercenter = c.sz.size();
  r.radical_basis = radical_basis(a);
  r.is_semisimple = r.radical_basis.empty();
  r.is_central_simple = r.is_semisimple && r.dim_even_center == 1;
  DerivationInfo<K> d = derivations_hh1(a);
  r.dim_der = d.der_basis.size();
  r.dim_innder = d.inner_basis.size();
  r.hh1_dim = d.hh1_dim;
  return r;
}

template <class K>
bool is_semisimple(const SuperAlgebra<K>& a) {
  return radical_basis(a).empty();
}

// ---------------------------------------------------------------------------
// Generated extensions and idempotents
// ---------------------------------------------------------------------------

/// Unique multiplicative extension of a generator assignment, when the given
/// elements generate the source and the assignment is consistent.
template <class K>
AlgebraHom<K> extend_from_generators(const AlgebraPtr<K>& a, const AlgebraPtr<K>& b,
                                     const std::vector<std::pair<Vec<K>, Vec<K>>>& gens) {
  const size_t na = a->dim(), nb = b->dim();
  // Augmented elimination: source coordinates first, image coordinates behind.
  RowSpan<K> span(na + nb);
  std::vector<std::pair<Vec<K>, Vec<K>>> basis;
  auto push = [&](const Vec<K>& x, const Vec<K>& y) {
    Vec<K> row(x);
    row.insert(row.end(), y.begin(), y.end());
    row = span.reduce(std::move(row));
    Vec<K> xr(row.begin(), row.begin() + na);
    Vec<K> yr(row.begin() + na, row.end());
    if (is_zero_vec(xr)) {
      if (!is_zero_vec(yr))
        throw Error("NOT_A_HOM", "generator assignment violates a relation");
      return false;
    }
    span.insert(std::move(row));
    basis.emplace_back(std::move(xr), std::move(yr));
    return true;
  };
  push(a->unit, b->unit);
  for (const auto& [x, y] : gens) push(x, y);

  bool grew = true;
  while (grew) {
    grew = false;
    size_t sz = basis.size();
    for (size_t i = 0; i < sz; ++i)
      for (size_t j = 0; j < sz; ++j) {
        if (push(a->mul(basis[i].first, basis[j].first), b->mul(basis[i].second, basis[j].second)))
          grew = true;
      }
  }
  if (span.rank() != na) throw Error("NOT_GENERATING", "generators do not span the source");

  // Solve for images of the standard basis.
  Matrix<K> src(na, basis.size()), img(nb, basis.size());
  for (size_t t = 0; t < basis.size(); ++t) {
    src.set_col(t, basis[t].first);
    img.set_col(t, basis[t].second);
  }
  Matrix<K> hom(nb, na);
  for (size_t i = 0; i < na; ++i) {
    auto coeff = solve(src, unit_vec<K>(na, i));
    if (!coeff) throw Error("NOT_GENERATING", "basis element outside generated span");
    hom.set_col(i, img.apply(*coeff));
  }
  AlgebraHom<K> h{a, b, std::move(hom)};
  Report rep = validate_hom(h);
  if (!rep.overall())
    throw Error("NOT_A_HOM", rep.first_failure() ? rep.first_failure()->witness : "inconsistent");
  return h;
}

/// For even idempotents p, q, the element b = qp + (1-q)(1-p); when b is
/// invertible it conjugates p to q.
template <class K>
std::optional<Vec<K>> idempotent_conjugator(const SuperAlgebra<K>& alg, const Vec<K>& p,
                                            const Vec<K>& q) {
  auto check_idem = [&](const Vec<K>& e) {
    uint8_t par;
    if (!is_homogeneous(alg.space, e, &par) || par != 0) return false;
    return alg.mul(e, e) == e;
  };
  if (!check_idem(p) || !check_idem(q)) throw Error("NOT_IDEMPOTENT", "input not an even idempotent");
  Vec<K> cp = alg.unit - p, cq = alg.unit - q;
  Vec<K> b = alg.mul(q, p) + alg.mul(cq, cp);
  Matrix<K> lb = alg.lmul(b);
  if (det(lb) == K(0)) return std::nullopt;
  // qb = qp = bp holds identically, so invertibility certifies q = b p b^{-1}.
  if (alg.mul(q, b) != alg.mul(b, p)) throw Error("INTERNAL", "conjugator identity failed");
  return b;
}

}  // namespace superbim
