#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superbim/builders.hpp"

namespace superbim {

/// Graded bimodule over a pair of super algebras, with one action matrix per
/// algebra basis element: left[a] is m -> e_a |> m, right[b] is m -> m <| e_b.
template <class K>
struct Bimodule {
  AlgebraPtr<K> left_alg, right_alg;
  GradedSpace space;
  std::vector<Matrix<K>> left;
  std::vector<Matrix<K>> right;
  std::string name;

  size_t dim() const { return space.dim(); }

  Matrix<K> lact(const Vec<K>& a) const {
    Matrix<K> m(dim(), dim());
    for (size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == K(0))) m += left[i] * a[i];
    return m;
  }
  Matrix<K> ract(const Vec<K>& b) const {
    Matrix<K> m(dim(), dim());
    for (size_t i = 0; i < b.size(); ++i)
      if (!(b[i] == K(0))) m += right[i] * b[i];
    return m;
  }
};

namespace detail {

template <class K>
bool action_parity_ok(const GradedSpace& alg_sp, const GradedSpace& mod_sp,
                      const std::vector<Matrix<K>>& act) {
  for (size_t a = 0; a < act.size(); ++a)
    for (size_t i = 0; i < mod_sp.dim(); ++i)
      for (size_t j = 0; j < mod_sp.dim(); ++j)
        if (!(act[a](i, j) == K(0)) &&
            mod_sp.parity[i] != ((alg_sp.parity[a] + mod_sp.parity[j]) & 1))
          return false;
  return true;
}

}  // namespace detail

template <class K>
Report validate_bimodule(const Bimodule<K>& m) {
  Report rep;
  rep.subject = m.name.empty() ? "bimodule" : m.name;
  const auto& A = *m.left_alg;
  const auto& B = *m.right_alg;

  bool shape = m.left.size() == A.dim() && m.right.size() == B.dim();
  rep.add("SHAPE", shape);
  if (!shape) return rep;

  rep.add("GRADING", detail::action_parity_ok(A.space, m.space, m.left) &&
                         detail::action_parity_ok(B.space, m.space, m.right),
          "action entry violates parity additivity");

  rep.add("UNIT", m.lact(A.unit) == Matrix<K>::identity(m.dim()) &&
                      m.ract(B.unit) == Matrix<K>::identity(m.dim()),
          "unit does not act as identity");

  bool lassoc = true;
  std::string w;
  for (size_t i = 0; i < A.dim() && lassoc; ++i)
    for (size_t j = 0; j < A.dim(); ++j) {
      if (m.lact(A.mul(unit_vec<K>(A.dim(), i), unit_vec<K>(A.dim(), j))) != m.left[i] * m.left[j]) {
        lassoc = false;
        w = "left action not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        break;
      }
    }
  rep.add("LEFT_ACTION", lassoc, w);

  bool rassoc = true;
  w.clear();
  for (size_t i = 0; i < B.dim() && rassoc; ++i)
    for (size_t j = 0; j < B.dim(); ++j) {
      if (m.ract(B.mul(unit_vec<K>(B.dim(), i), unit_vec<K>(B.dim(), j))) != m.right[j] * m.right[i]) {
        rassoc = false;
        w = "right action not anti-multiplicative at (" + std::to_string(i) + "," +
            std::to_string(j) + ")";
        break;
      }
    }
  rep.add("RIGHT_ACTION", rassoc, w);

  bool comm = true;
  w.clear();
  for (size_t a = 0; a < A.dim() && comm; ++a)
    for (size_t b = 0; b < B.dim(); ++b)
      if (m.left[a] * m.right[b] != m.right[b] * m.left[a]) {
        comm = false;
        w = "COMMUTING_ACTIONS fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
        break;
      }
  rep.add("COMMUTING_ACTIONS", comm, w);
  return rep;
}

template <class K>
Bimodule<K> identity_bimodule(const AlgebraPtr<K>& a) {
  Bimodule<K> m;
  m.left_alg = m.right_alg = a;
  m.space = a->space;
  for (size_t i = 0; i < a->dim(); ++i) {
    m.left.push_back(a->lmul_basis(i));
    m.right.push_back(a->rmul_basis(i));
  }
  m.name = a->name;
  return m;
}

/// Precomposes the actions with algebra homomorphisms into the acting algebras.
template <class K>
Bimodule<K> twist(const Bimodule<K>& m, const AlgebraHom<K>& phi, const AlgebraHom<K>& psi) {
  if (!same_algebra(phi.target, m.left_alg) || !same_algebra(psi.target, m.right_alg))
    throw Error("TYPE", "twist homomorphisms do not target the acting algebras");
  Bimodule<K> out;
  out.left_alg = phi.source;
  out.right_alg = psi.source;
  out.space = m.space;
  for (size_t i = 0; i < phi.source->dim(); ++i) out.left.push_back(m.lact(phi.apply_basis(i)));
  for (size_t i = 0; i < psi.source->dim(); ++i) out.right.push_back(m.ract(psi.apply_basis(i)));
  out.name = m.name + "^tw";
  return out;
}

/// Opposite grading; right action picks up the sign (-1)^{|b|}.
template <class K>
Bimodule<K> parity_flip(const Bimodule<K>& m) {
  Bimodule<K> out = m;
  out.space = m.space.flipped();
  for (size_t b = 0; b < m.right.size(); ++b)
    if (m.right_alg->space.parity[b]) out.right[b] *= K(-1);
  out.name = "Pi(" + m.name + ")";
  return out;
}

/// The identity-bimodule twist A_phi (right action through phi).
template <class K>
Bimodule<K> twisted_identity(const AlgebraHom<K>& phi) {
  Bimodule<K> m = identity_bimodule(phi.target);
  Bimodule<K> out = twist(m, identity_hom(phi.target), phi);
  out.name = phi.target->name + "_phi";
  return out;
}

/// Sub-bimodule of an algebra spanned by homogeneous vectors closed under
/// both regular actions.
template <class K>
Bimodule<K> sub_bimodule(const AlgebraPtr<K>& a, const std::vector<Vec<K>>& basis,
                         const std::string& name = "sub") {
  Bimodule<K> m;
  m.left_alg = m.right_alg = a;
  const size_t dm = basis.size();
  Matrix<K> cols(a->dim(), dm);
  for (size_t t = 0; t < dm; ++t) cols.set_col(t, basis[t]);
  for (const auto& v : basis) {
    uint8_t p = 0;
    if (!is_homogeneous(a->space, v, &p)) throw Error("GRADING", "non-homogeneous basis vector");
    m.space.parity.push_back(p);
  }
  for (size_t g = 0; g < a->dim(); ++g) {
    Matrix<K> l(dm, dm), r(dm, dm);
    for (size_t t = 0; t < dm; ++t) {
      auto lc = solve(cols, a->mul(unit_vec<K>(a->dim(), g), basis[t]));
      auto rc = solve(cols, a->mul(basis[t], unit_vec<K>(a->dim(), g)));
      if (!lc || !rc) throw Error("TYPE", "span is not closed under the actions");
      l.set_col(t, *lc);
      r.set_col(t, *rc);
    }
    m.left.push_back(std::move(l));
    m.right.push_back(std::move(r));
  }
  m.name = name;
  return m;
}

/// k^n of columns as an (M_n, k)-bimodule.
template <class K>
Bimodule<K> column_module(const AlgebraPtr<K>& mat_n, const AlgebraPtr<K>& ground) {
  size_t n = 0;
  while (n * n < mat_n->dim()) ++n;
  if (n * n != mat_n->dim()) throw Error("TYPE", "not a matrix algebra");
  Bimodule<K> m;
  m.left_alg = mat_n;
  m.right_alg = ground;
  m.space = GradedSpace::even(n);
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) {
      Matrix<K> act(n, n);
      act(u, v) = K(1);  // E_uv maps column v to column u
      m.left.push_back(std::move(act));
    }
  m.right.push_back(Matrix<K>::identity(n));
  m.name = "col" + std::to_string(n);
  return m;
}

/// k^n of rows as a (k, M_n)-bimodule.
template <class K>
Bimodule<K> row_module(const AlgebraPtr<K>& ground, const AlgebraPtr<K>& mat_n) {
  size_t n = 0;
  while (n * n < mat_n->dim()) ++n;
  if (n * n != mat_n->dim()) throw Error("TYPE", "not a matrix algebra");
  Bimodule<K> m;
  m.left_alg = ground;
  m.right_alg = mat_n;
  m.space = GradedSpace::even(n);
  m.left.push_back(Matrix<K>::identity(n));
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) {
      Matrix<K> act(n, n);
      act(v, u) = K(1);  // row u lands on row v under right E_uv
      m.right.push_back(std::move(act));
    }
  m.name = "row" + std::to_string(n);
  return m;
}

/// External direct sum: an (A + A', B + B')-bimodule with blockwise actions.
template <class K>
Bimodule<K> direct_sum_bimodule(const Bimodule<K>& m, const Bimodule<K>& n,
                                const AlgebraPtr<K>& left_sum, const AlgebraPtr<K>& right_sum) {
  Bimodule<K> out;
  out.left_alg = left_sum;
  out.right_alg = right_sum;
  out.space = sum_space(m.space, n.space);
  const size_t dm = m.dim(), dn = n.dim(), d = dm + dn;
  auto embed = [&](const Matrix<K>& top, const Matrix<K>& bot) {
    Matrix<K> act(d, d);
    for (size_t i = 0; i < dm; ++i)
      for (size_t j = 0; j < dm; ++j) act(i, j) = top(i, j);
    for (size_t i = 0; i < dn; ++i)
      for (size_t j = 0; j < dn; ++j) act(dm + i, dm + j) = bot(i, j);
    return act;
  };
  Matrix<K> zm(dm, dm), zn(dn, dn);
  for (const auto& l : m.left) out.left.push_back(embed(l, zn));
  for (const auto& l : n.left) out.left.push_back(embed(zm, l));
  for (const auto& r : m.right) out.right.push_back(embed(r, zn));
  for (const auto& r : n.right) out.right.push_back(embed(zm, r));
  out.name = m.name + "+" + n.name;
  return out;
}

// ---------------------------------------------------------------------------
// Intertwiners
// ---------------------------------------------------------------------------

template <class K>
struct Intertwiner {
  const Bimodule<K>* source = nullptr;
  const Bimodule<K>* target = nullptr;
  Matrix<K> matrix;
  uint8_t parity = 0;
};

/// Checks u: source -> target commutes with both actions strictly (for odd u
/// the same unsigned convention is used; odd maps are stored but never treated
/// as 2-morphisms).
template <class K>
bool is_intertwiner(const Bimodule<K>& src, const Bimodule<K>& tgt, const Matrix<K>& u) {
  for (size_t a = 0; a < src.left.size(); ++a)
    if (u * src.left[a] != tgt.left[a] * u) return false;
  for (size_t b = 0; b < src.right.size(); ++b)
    if (u * src.right[b] != tgt.right[b] * u) return false;
  return true;
}

template <class K>
bool matrix_has_parity(const GradedSpace& src, const GradedSpace& tgt, const Matrix<K>& u,
                       uint8_t parity) {
  for (size_t i = 0; i < tgt.dim(); ++i)
    for (size_t j = 0; j < src.dim(); ++j)
      if (!(u(i, j) == K(0)) && ((src.parity[j] + parity) & 1) != tgt.parity[i]) return false;
  return true;
}

/// Exact bases of even and odd intertwiners between bimodules over the same
/// algebra pair.
template <class K>
std::pair<std::vector<Matrix<K>>, std::vector<Matrix<K>>> intertwiner_space(
    const Bimodule<K>& m, const Bimodule<K>& n) {
  if (!same_algebra(m.left_alg, n.left_alg) || !same_algebra(m.right_alg, n.right_alg))
    throw Error("TYPE", "intertwiner space needs a common algebra pair");
  const size_t dm = m.dim(), dn = n.dim();
  std::pair<std::vector<Matrix<K>>, std::vector<Matrix<K>>> out;
  for (int par = 0; par <= 1; ++par) {
    // Unknown entries u(i, j) with parity(i) = parity(j) + par.
    std::vector<std::pair<size_t, size_t>> slots;
    std::vector<long> slot_of(dn * dm, -1);
    for (size_t i = 0; i < dn; ++i)
      for (size_t j = 0; j < dm; ++j)
        if (n.space.parity[i] == ((m.space.parity[j] + par) & 1)) {
          slot_of[i * dm + j] = static_cast<long>(slots.size());
          slots.emplace_back(i, j);
        }
    RowSpan<K> rows(slots.size());
    auto add_equations = [&](const Matrix<K>& sm, const Matrix<K>& tm) {
      // u * sm - tm * u = 0, one equation per entry (i, j).
      for (size_t i = 0; i < dn; ++i)
        for (size_t j = 0; j < dm; ++j) {
          Vec<K> row(slots.size(), K(0));
          bool nz = false;
          for (size_t t = 0; t < dm; ++t) {
            const K& s = sm(t, j);
            if (s == K(0)) continue;
            long sl = slot_of[i * dm + t];
            if (sl >= 0) {
              row[sl] += s;
              nz = true;
            }
          }
          for (size_t t = 0; t < dn; ++t) {
            const K& s = tm(i, t);
            if (s == K(0)) continue;
            long sl = slot_of[t * dm + j];
            if (sl >= 0) {
              row[sl] -= s;
              nz = true;
            }
          }
          if (nz) rows.insert(std::move(row));
        }
    };
    for (size_t a = 0; a < m.left.size(); ++a) add_equations(m.left[a], n.left[a]);
    for (size_t b = 0; b < m.right.size(); ++b) add_equations(m.right[b], n.right[b]);

    std::vector<bool> is_pivot(slots.size(), false);
    for (size_t p : rows.pivot_cols()) is_pivot[p] = true;
    auto& bucket = par == 0 ? out.first : out.second;
    for (size_t f = 0; f < slots.size(); ++f) {
      if (is_pivot[f]) continue;
      Vec<K> v(slots.size(), K(0));
      v[f] = K(1);
      for (size_t r = 0; r < rows.rank(); ++r) v[rows.pivot_cols()[r]] = -rows.rows()[r][f];
      Matrix<K> u(dn, dm);
      for (size_t s = 0; s < slots.size(); ++s) u(slots[s].first, slots[s].second) = v[s];
      bucket.push_back(std::move(u));
    }
  }
  return out;
}

enum class NoInvertibleReason { DIM_MISMATCH, ZERO_EVEN_HOM, SINGULAR_FAMILY };

template <class K>
struct InvertibleSearch {
  std::optional<Matrix<K>> found;
  NoInvertibleReason reason = NoInvertibleReason::DIM_MISMATCH;
  size_t even_hom_dim = 0;
};

/// Searches the even intertwiner space for an invertible element.
///
/// A NONE answer carries one of three exact certificates: graded dimension
/// mismatch, zero even Hom, or the determinant of the generic even element
/// vanishing on a full (deg+1)^params evaluation grid, which forces it to
/// vanish identically.
template <class K>
InvertibleSearch<K> find_invertible_intertwiner(const Bimodule<K>& m, const Bimodule<K>& n) {
  InvertibleSearch<K> res;
  if (m.dim() != n.dim()) {
    res.reason = NoInvertibleReason::DIM_MISMATCH;
    return res;
  }
  auto [even, odd] = intertwiner_space(m, n);
  (void)odd;
  res.even_hom_dim = even.size();
  if (even.empty()) {
    res.reason = NoInvertibleReason::ZERO_EVEN_HOM;
    return res;
  }
  if (m.space.even_dim() != n.space.even_dim()) {
    // An even map restricts to a non-square block, so its determinant is
    // identically zero.
    res.reason = NoInvertibleReason::SINGULAR_FAMILY;
    return res;
  }
  {
    // A shared kernel vector or a proper joint image makes every element of
    // the family singular; both are exact rank computations.
    RowSpan<K> images(n.dim()), coimages(m.dim());
    for (const auto& u : even) {
      for (size_t c = 0; c < u.cols(); ++c) images.insert(u.col(c));
      for (size_t r = 0; r < u.rows(); ++r) coimages.insert(u.row(r));
    }
    if (images.rank() < n.dim() || coimages.rank() < m.dim()) {
      res.reason = NoInvertibleReason::SINGULAR_FAMILY;
      return res;
    }
  }
  const size_t d = even.size();
  const size_t deg = m.dim();
  auto eval = [&](const std::vector<long>& coeff) -> std::optional<Matrix<K>> {
    Matrix<K> u(n.dim(), m.dim());
    for (size_t i = 0; i < d; ++i)
      if (coeff[i] != 0) u += even[i] * K(coeff[i]);
    if (det(u) == K(0)) return std::nullopt;
    return u;
  };
  // Cheap first round: single basis elements, then pair sums.
  for (size_t i = 0; i < d; ++i) {
    std::vector<long> c(d, 0);
    c[i] = 1;
    if (auto u = eval(c)) {
      res.found = std::move(*u);
      return res;
    }
  }
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j) {
      std::vector<long> c(d, 0);
      c[i] = c[j] = 1;
      if (auto u = eval(c)) {
        res.found = std::move(*u);
        return res;
      }
    }
  // Full deterministic grid {0..deg}^d. The determinant has degree <= deg in
  // each coefficient, so vanishing on the whole grid certifies NONE.
  double budget = 1;
  for (size_t i = 0; i < d; ++i) {
    budget *= static_cast<double>(deg + 1);
    if (budget > 4e6) throw Error("BUDGET", "invertible-intertwiner certificate grid too large");
  }
  std::vector<long> c(d, 0);
  while (true) {
    if (auto u = eval(c)) {
      res.found = std::move(*u);
      return res;
    }
    size_t pos = 0;
    while (pos < d && c[pos] == static_cast<long>(deg)) c[pos++] = 0;
    if (pos == d) break;
    ++c[pos];
  }
  res.reason = NoInvertibleReason::SINGULAR_FAMILY;
  return res;
}

// ---------------------------------------------------------------------------
// Tensor products
// ---------------------------------------------------------------------------

/// Exterior tensor product over the ground field, with the Koszul signs
/// (a (x) a') |> (m (x) m') <| (b (x) b')
///   = (-1)^{|a'||m| + |b||m'| + |b||a'|} (a |> m <| b) (x) (a' |> m' <| b').
template <class K>
Bimodule<K> exterior_tensor(const Bimodule<K>& m, const Bimodule<K>& n,
                            const AlgebraPtr<K>& left_tensor, const AlgebraPtr<K>& right_tensor) {
  Bimodule<K> out;
  out.left_alg = left_tensor;
  out.right_alg = right_tensor;
  out.space = tensor_space(m.space, n.space);
  const size_t dm = m.dim(), dn = n.dim();
  // Left action of e_a (x) e_a'; the sign (-1)^{|a'||m|} rides on the m slot.
  for (size_t a = 0; a < m.left.size(); ++a)
    for (size_t ap = 0; ap < n.left.size(); ++ap) {
      Matrix<K> signed_l = m.left[a];
      if (n.left_alg->space.parity[ap]) {
        for (size_t i = 0; i < dm; ++i)
          for (size_t j = 0; j < dm; ++j)
            if (m.space.parity[j]) signed_l(i, j) = -signed_l(i, j);
      }
      out.left.push_back(kronecker(signed_l, n.left[ap]));
    }
  // Right action of e_b (x) e_b'; the sign (-1)^{|b||m'|} rides on the n slot.
  for (size_t b = 0; b < m.right.size(); ++b)
    for (size_t bp = 0; bp < n.right.size(); ++bp) {
      Matrix<K> rb = m.right[b];
      Matrix<K> rbp = n.right[bp];
      if (m.right_alg->space.parity[b]) {
        for (size_t i = 0; i < dn; ++i)
          for (size_t j = 0; j < dn; ++j)
            if (n.space.parity[j]) rbp(i, j) = -rbp(i, j);
      }
      out.right.push_back(kronecker(rb, rbp));
    }
  out.name = m.name + "(x)" + n.name;
  return out;
}

template <class K>
struct RelTensor {
  Bimodule<K> bim;
  QuotientPresentation<K> pres;
};

/// Relative tensor product over the shared middle algebra: the quotient of
/// M (x) N by (m <| b) (x) n - m (x) (b |> n), with the induced outer actions.
template <class K>
RelTensor<K> relative_tensor(const Bimodule<K>& m, const Bimodule<K>& n) {
  if (!same_algebra(m.right_alg, n.left_alg))
    throw Error("TYPE", "relative tensor requires matching middle algebra");
  const size_t dm = m.dim(), dn = n.dim(), db = m.right_alg->dim();
  GradedSpace amb = tensor_space(m.space, n.space);
  std::vector<Vec<K>> relations;
  for (size_t b = 0; b < db; ++b) {
    const Matrix<K>& rb = m.right[b];
    const Matrix<K>& lb = n.left[b];
    for (size_t i = 0; i < dm; ++i)
      for (size_t j = 0; j < dn; ++j) {
        Vec<K> rel(dm * dn, K(0));
        bool nz = false;
        for (size_t u = 0; u < dm; ++u)
          if (!(rb(u, i) == K(0))) {
            rel[u * dn + j] += rb(u, i);
            nz = true;
          }
        for (size_t v = 0; v < dn; ++v)
          if (!(lb(v, j) == K(0))) {
            rel[i * dn + v] -= lb(v, j);
            nz = true;
          }
        if (nz) relations.push_back(std::move(rel));
      }
  }
  RelTensor<K> out;
  out.pres = quotient_with_section(amb, relations);
  out.bim.left_alg = m.left_alg;
  out.bim.right_alg = n.right_alg;
  out.bim.space = out.pres.quotient;
  Matrix<K> idn = Matrix<K>::identity(dn), idm = Matrix<K>::identity(dm);
  for (size_t a = 0; a < m.left.size(); ++a) {
    auto desc = descend_map(out.pres, out.pres, kronecker(m.left[a], idn));
    if (!desc) throw Error("INTERNAL", "left action fails to descend to the quotient");
    out.bim.left.push_back(std::move(*desc));
  }
  for (size_t c = 0; c < n.right.size(); ++c) {
    auto desc = descend_map(out.pres, out.pres, kronecker(idm, n.right[c]));
    if (!desc) throw Error("INTERNAL", "right action fails to descend to the quotient");
    out.bim.right.push_back(std::move(*desc));
  }
  out.bim.name = m.name + "(x)_B " + n.name;
  return out;
}

/// Dual bimodule: all right-linear maps M -> B, graded by parity behavior,
/// with actions (b |> xi <| a)(m) = b xi(a |> m). The basis matrices of the
/// carrier are returned alongside.
template <class K>
struct DualBimodule {
  Bimodule<K> bim;                    // over (B, A) for M over (A, B)
  std::vector<Matrix<K>> basis_maps;  // each is a (dim B x dim M) matrix
};

template <class K>
DualBimodule<K> dual(const Bimodule<K>& m) {
  const auto& A = *m.left_alg;
  const auto& B = *m.right_alg;
  const size_t dm = m.dim(), db = B.dim();
  DualBimodule<K> out;
  // Solve xi(m <| b) = xi(m) b, i.e. X * R^M_b = R^B_b * X, in each parity block.
  for (int par = 0; par <= 1; ++par) {
    std::vector<std::pair<size_t, size_t>> slots;
    std::vector<long> slot_of(db * dm, -1);
    for (size_t u = 0; u < db; ++u)
      for (size_t i = 0; i < dm; ++i)
        if (B.space.parity[u] == ((m.space.parity[i] + par) & 1)) {
          slot_of[u * dm + i] = static_cast<long>(slots.size());
          slots.emplace_back(u, i);
        }
    RowSpan<K> rows(slots.size());
    for (size_t b = 0; b < db; ++b) {
      const Matrix<K> rb = m.right[b];
      const Matrix<K> rbB = B.rmul_basis(b);
      for (size_t u = 0; u < db; ++u)
        for (size_t i = 0; i < dm; ++i) {
          Vec<K> row(slots.size(), K(0));
          bool nz = false;
          for (size_t t = 0; t < dm; ++t)
            if (!(rb(t, i) == K(0))) {
              long sl = slot_of[u * dm + t];
              if (sl >= 0) {
                row[sl] += rb(t, i);
                nz = true;
              }
            }
          for (size_t t = 0; t < db; ++t)
            if (!(rbB(u, t) == K(0))) {
              long sl = slot_of[t * dm + i];
              if (sl >= 0) {
                row[sl] -= rbB(u, t);
                nz = true;
              }
            }
          if (nz) rows.insert(std::move(row));
        }
    }
    std::vector<bool> is_pivot(slots.size(), false);
    for (size_t p : rows.pivot_cols()) is_pivot[p] = true;
    for (size_t f = 0; f < slots.size(); ++f) {
      if (is_pivot[f]) continue;
      Vec<K> v(slots.size(), K(0));
      v[f] = K(1);
      for (size_t r = 0; r < rows.rank(); ++r) v[rows.pivot_cols()[r]] = -rows.rows()[r][f];
      Matrix<K> xi(db, dm);
      for (size_t s = 0; s < slots.size(); ++s) xi(slots[s].first, slots[s].second) = v[s];
      out.basis_maps.push_back(std::move(xi));
      out.bim.space.parity.push_back(static_cast<uint8_t>(par));
    }
  }

  Matrix<K> basis_cols(db * dm, out.basis_maps.size());
  for (size_t t = 0; t < out.basis_maps.size(); ++t)
    basis_cols.set_col(t, out.basis_maps[t].vectorize());
  auto in_basis = [&](const Matrix<K>& f) -> Vec<K> {
    auto x = solve(basis_cols, f.vectorize());
    if (!x) throw Error("INTERNAL", "dual action leaves the solution space");
    return *x;
  };

  out.bim.left_alg = m.right_alg;
  out.bim.right_alg = m.left_alg;
  const size_t dd = out.basis_maps.size();
  for (size_t b = 0; b < db; ++b) {
    Matrix<K> act(dd, dd);
    for (size_t t = 0; t < dd; ++t)
      act.set_col(t, in_basis(B.lmul_basis(b) * out.basis_maps[t]));
    out.bim.left.push_back(std::move(act));
  }
  for (size_t a = 0; a < A.dim(); ++a) {
    Matrix<K> act(dd, dd);
    for (size_t t = 0; t < dd; ++t)
      act.set_col(t, in_basis(out.basis_maps[t] * m.left[a]));
    out.bim.right.push_back(std::move(act));
  }
  out.bim.name = "dual(" + m.name + ")";
  return out;
}

}  // namespace superbim
