#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "superbim/adjoint.hpp"
#include "superbim/matexp.hpp"

namespace superbim {

/// Exact implementer triple: algebra isomorphisms phi, psi and an even
/// invertible u with u(a |> m <| b) = phi(a) |> u(m) <| psi(b). Source and
/// target fibers may differ (transition data of bundles); for a single
/// bimodule both are the same object.
template <class K>
struct ImplementerTriple {
  AlgebraHom<K> phi;  // left algebras
  Matrix<K> u;
  AlgebraHom<K> psi;  // right algebras
};

template <class K>
ImplementerTriple<K> identity_triple(const Bimodule<K>& m) {
  return {identity_hom(m.left_alg), Matrix<K>::identity(m.dim()), identity_hom(m.right_alg)};
}

template <class K>
Report implementer_check(const Bimodule<K>& src, const Bimodule<K>& tgt,
                         const ImplementerTriple<K>& t) {
  Report rep;
  rep.subject = "implementer";
  rep.add("PHI_HOM", validate_hom(t.phi).overall() && same_algebra(t.phi.source, src.left_alg) &&
                         same_algebra(t.phi.target, tgt.left_alg) && inverse(t.phi.matrix).has_value());
  rep.add("PSI_HOM", validate_hom(t.psi).overall() && same_algebra(t.psi.source, src.right_alg) &&
                         same_algebra(t.psi.target, tgt.right_alg) && inverse(t.psi.matrix).has_value());
  if (!inverse(t.u)) throw Error("NOT_INVERTIBLE", "implementer map is singular");
  rep.add("U_EVEN", matrix_has_parity(src.space, tgt.space, t.u, 0));

  bool left_ok = true, right_ok = true;
  std::string wl, wr;
  for (size_t a = 0; a < src.left.size() && left_ok; ++a)
    if (t.u * src.left[a] != tgt.lact(t.phi.apply_basis(a)) * t.u) {
      left_ok = false;
      wl = "left intertwining fails at basis " + std::to_string(a);
    }
  for (size_t b = 0; b < src.right.size() && right_ok; ++b)
    if (t.u * src.right[b] != tgt.ract(t.psi.apply_basis(b)) * t.u) {
      right_ok = false;
      wr = "right intertwining fails at basis " + std::to_string(b);
    }
  rep.add("LEFT_INTERTWINES", left_ok, wl);
  rep.add("RIGHT_INTERTWINES", right_ok, wr);
  return rep;
}

template <class K>
Report implementer_check(const Bimodule<K>& m, const ImplementerTriple<K>& t) {
  return implementer_check(m, m, t);
}

template <class K>
ImplementerTriple<K> compose_triples(const ImplementerTriple<K>& outer,
                                     const ImplementerTriple<K>& inner) {
  return {compose_homs(outer.phi, inner.phi), outer.u * inner.u,
          compose_homs(outer.psi, inner.psi)};
}

template <class K>
ImplementerTriple<K> inverse_triple(const ImplementerTriple<K>& t) {
  auto pi = inverse_hom(t.phi);
  auto si = inverse_hom(t.psi);
  auto ui = inverse(t.u);
  if (!pi || !si || !ui) throw Error("NOT_INVERTIBLE", "triple has a singular component");
  return {*pi, *ui, *si};
}

/// Numeric triple for non-nilpotent exponentials.
struct NumericTriple {
  Matrix<double> phi, u, psi;
};

template <class K>
double numeric_implementer_residual(const Bimodule<K>& m, const NumericTriple& t) {
  double res = 0;
  std::vector<Matrix<double>> left, right;
  for (const auto& l : m.left) left.push_back(to_double(l));
  for (const auto& r : m.right) right.push_back(to_double(r));
  const size_t na = m.left_alg->dim(), nb = m.right_alg->dim(), dm = m.dim();
  for (size_t a = 0; a < na; ++a) {
    Matrix<double> phil(dm, dm);
    for (size_t k = 0; k < na; ++k)
      if (t.phi(k, a) != 0.0) phil += left[k] * t.phi(k, a);
    res = std::max(res, max_abs(t.u * left[a] - phil * t.u));
  }
  for (size_t b = 0; b < nb; ++b) {
    Matrix<double> psir(dm, dm);
    for (size_t k = 0; k < nb; ++k)
      if (t.psi(k, b) != 0.0) psir += right[k] * t.psi(k, b);
    res = std::max(res, max_abs(t.u * right[b] - psir * t.u));
  }
  return res;
}

/// Infinitesimal implementer: derivations on both sides and an even map on M
/// with v(a |> m <| b) = dA(a) |> m <| b + a |> v(m) <| b + a |> m <| dB(b).
template <class K>
struct ImpLieElement {
  Matrix<K> d_left;   // derivation on the left algebra
  Matrix<K> v;        // even map on the carrier
  Matrix<K> d_right;  // derivation on the right algebra
};

template <class K>
bool imp_lie_check(const Bimodule<K>& m, const ImpLieElement<K>& e) {
  const auto& A = *m.left_alg;
  const auto& B = *m.right_alg;
  if (!validate_derivation(Derivation<K>{m.left_alg, e.d_left}).overall()) return false;
  if (!validate_derivation(Derivation<K>{m.right_alg, e.d_right}).overall()) return false;
  if (!matrix_has_parity(m.space, m.space, e.v, 0)) return false;
  for (size_t a = 0; a < A.dim(); ++a)
    if (e.v * m.left[a] - m.left[a] * e.v != m.lact(e.d_left.col(a))) return false;
  for (size_t b = 0; b < B.dim(); ++b)
    if (e.v * m.right[b] - m.right[b] * e.v != m.ract(e.d_right.col(b))) return false;
  return true;
}

namespace detail_imp {

/// Parity-preserving matrix slots for an n-dimensional graded space.
inline std::pair<std::vector<std::pair<size_t, size_t>>, std::vector<long>> even_slots(
    const GradedSpace& sp) {
  const size_t n = sp.dim();
  std::vector<std::pair<size_t, size_t>> slots;
  std::vector<long> of(n * n, -1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (sp.parity[i] == sp.parity[j]) {
        of[i * n + j] = static_cast<long>(slots.size());
        slots.emplace_back(i, j);
      }
  return {slots, of};
}

/// Appends the compatibility block [v, act_a] = act(d(e_a)) for every basis a.
/// The derivation d is parameterized over a given basis of the derivation
/// algebra (coefficients are the unknowns at d_offset); when `fixed_d` is set
/// it contributes to the right-hand side instead.
template <class K>
void append_compat_rows(const Bimodule<K>& m, const std::vector<Matrix<K>>& act,
                        const SuperAlgebra<K>& alg, size_t v_offset,
                        const std::vector<long>& v_slot_of, size_t d_offset,
                        const std::vector<Matrix<K>>& der_basis, const Matrix<K>* fixed_d,
                        size_t total_unknowns, std::vector<Vec<K>>& rows, std::vector<K>& rhs) {
  const size_t dm = m.dim(), n = alg.dim();
  auto combine = [&](const Vec<K>& coeffs) {
    Matrix<K> out(dm, dm);
    for (size_t k = 0; k < n; ++k)
      if (!FieldOps<K>::is_zero(coeffs[k])) out += act[k] * coeffs[k];
    return out;
  };
  for (size_t a = 0; a < n; ++a) {
    const Matrix<K>& la = act[a];
    // Effect of each derivation-basis element on this compatibility block.
    std::vector<Matrix<K>> der_act;
    if (!fixed_d)
      for (const auto& d : der_basis) der_act.push_back(combine(d.col(a)));
    Matrix<K> fixed_act = fixed_d ? combine(fixed_d->col(a)) : Matrix<K>();
    for (size_t i = 0; i < dm; ++i)
      for (size_t j = 0; j < dm; ++j) {
        Vec<K> row(total_unknowns, K(0));
        K rv = K(0);
        bool nz = false;
        // (v * la)(i, j)
        for (size_t t = 0; t < dm; ++t) {
          const K& s = la(t, j);
          if (FieldOps<K>::is_zero(s)) continue;
          long sl = v_slot_of[i * dm + t];
          if (sl >= 0) {
            row[v_offset + sl] += s;
            nz = true;
          }
        }
        // -(la * v)(i, j)
        for (size_t t = 0; t < dm; ++t) {
          const K& s = la(i, t);
          if (FieldOps<K>::is_zero(s)) continue;
          long sl = v_slot_of[t * dm + j];
          if (sl >= 0) {
            row[v_offset + sl] -= s;
            nz = true;
          }
        }
        // -act(d(e_a))(i, j)
        if (fixed_d) {
          if (!FieldOps<K>::is_zero(fixed_act(i, j))) {
            rv += fixed_act(i, j);
            nz = true;
          }
        } else {
          for (size_t t = 0; t < der_basis.size(); ++t) {
            if (!FieldOps<K>::is_zero(der_act[t](i, j))) {
              row[d_offset + t] -= der_act[t](i, j);
              nz = true;
            }
          }
        }
        if (nz) {
          rows.push_back(std::move(row));
          rhs.push_back(rv);
        }
      }
  }
}

}  // namespace detail_imp

/// Exact basis of the Lie algebra of implementer triples. The derivation
/// components are parameterized over precomputed bases of Der(A) and Der(B),
/// so the unknowns are (Der(A)-coefficients, even entries of v,
/// Der(B)-coefficients).
template <class K>
std::vector<ImpLieElement<K>> imp_lie_algebra(const Bimodule<K>& m) {
  const auto& A = *m.left_alg;
  const auto& B = *m.right_alg;
  const size_t dm = m.dim();
  std::vector<Matrix<K>> der_a = derivations_hh1(A).der_basis;
  std::vector<Matrix<K>> der_b = derivations_hh1(B).der_basis;
  auto [v_slots, v_of] = detail_imp::even_slots(m.space);
  const size_t na = der_a.size(), nv = v_slots.size(), nb = der_b.size();
  const size_t total = na + nv + nb;

  std::vector<Vec<K>> rows;
  std::vector<K> rhs;
  detail_imp::append_compat_rows(m, m.left, A, na, v_of, 0, der_a,
                                 static_cast<const Matrix<K>*>(nullptr), total, rows, rhs);
  detail_imp::append_compat_rows(m, m.right, B, na, v_of, na + nv, der_b,
                                 static_cast<const Matrix<K>*>(nullptr), total, rows, rhs);

  RowSpan<K> span(total);
  for (auto& r : rows) span.insert(std::move(r));
  std::vector<bool> is_pivot(total, false);
  for (size_t p : span.pivot_cols()) is_pivot[p] = true;

  std::vector<ImpLieElement<K>> basis;
  for (size_t f = 0; f < total; ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v(total, K(0));
    v[f] = K(1);
    for (size_t r = 0; r < span.rank(); ++r) v[span.pivot_cols()[r]] = -span.rows()[r][f];
    ImpLieElement<K> e{Matrix<K>(A.dim(), A.dim()), Matrix<K>(dm, dm), Matrix<K>(B.dim(), B.dim())};
    for (size_t s = 0; s < na; ++s)
      if (!FieldOps<K>::is_zero(v[s])) e.d_left += der_a[s] * v[s];
    for (size_t s = 0; s < nv; ++s) e.v(v_slots[s].first, v_slots[s].second) = v[na + s];
    for (size_t s = 0; s < nb; ++s)
      if (!FieldOps<K>::is_zero(v[na + nv + s])) e.d_right += der_b[s] * v[na + nv + s];
    basis.push_back(std::move(e));
  }
  return basis;
}

struct ImplementingFlags {
  bool left = false, right = false;
  size_t left_rank = 0, right_rank = 0;
  size_t dim_der_left = 0, dim_der_right = 0;
  size_t lie_dim = 0;
};

/// Left/right implementing is decided by surjectivity of the projections of
/// the implementer Lie algebra onto the derivation algebras; an exact rank
/// computation.
template <class K>
ImplementingFlags implementing_flags(const Bimodule<K>& m) {
  std::vector<ImpLieElement<K>> lie = imp_lie_algebra(m);
  ImplementingFlags out;
  out.lie_dim = lie.size();
  out.dim_der_left = derivations_hh1(*m.left_alg).der_basis.size();
  out.dim_der_right = derivations_hh1(*m.right_alg).der_basis.size();
  RowSpan<K> lspan(m.left_alg->dim() * m.left_alg->dim());
  RowSpan<K> rspan(m.right_alg->dim() * m.right_alg->dim());
  for (const auto& e : lie) {
    lspan.insert(e.d_left.vectorize());
    rspan.insert(e.d_right.vectorize());
  }
  out.left_rank = lspan.rank();
  out.right_rank = rspan.rank();
  out.left = out.left_rank == out.dim_der_left;
  out.right = out.right_rank == out.dim_der_right;
  return out;
}

enum class Side { LEFT, RIGHT };

/// Solves for an implementer Lie element whose chosen-side component equals
/// the given derivation, or nullopt when the derivation does not lift.
template <class K>
std::optional<ImpLieElement<K>> lift_derivation(const Bimodule<K>& m, const Derivation<K>& d,
                                                Side side) {
  const auto& fixed_alg = side == Side::LEFT ? *m.left_alg : *m.right_alg;
  const auto& free_alg = side == Side::LEFT ? *m.right_alg : *m.left_alg;
  if (!same_algebra(d.algebra, side == Side::LEFT ? m.left_alg : m.right_alg))
    throw Error("TYPE", "derivation is not over the chosen side's algebra");
  const size_t dm = m.dim();
  auto [v_slots, v_of] = detail_imp::even_slots(m.space);
  std::vector<Matrix<K>> der_free = derivations_hh1(free_alg).der_basis;
  const size_t nv = v_slots.size(), nf = der_free.size();
  const size_t total = nv + nf;

  std::vector<Vec<K>> rows;
  std::vector<K> rhs;
  const std::vector<Matrix<K>> no_basis;
  if (side == Side::LEFT) {
    detail_imp::append_compat_rows(m, m.left, fixed_alg, 0, v_of, 0, no_basis, &d.matrix, total,
                                   rows, rhs);
    detail_imp::append_compat_rows(m, m.right, free_alg, 0, v_of, nv, der_free,
                                   static_cast<const Matrix<K>*>(nullptr), total, rows, rhs);
  } else {
    detail_imp::append_compat_rows(m, m.right, fixed_alg, 0, v_of, 0, no_basis, &d.matrix, total,
                                   rows, rhs);
    detail_imp::append_compat_rows(m, m.left, free_alg, 0, v_of, nv, der_free,
                                   static_cast<const Matrix<K>*>(nullptr), total, rows, rhs);
  }
  auto sol = solve(rows_matrix(rows, total), rhs);
  if (!sol) return std::nullopt;
  ImpLieElement<K> e{Matrix<K>(m.left_alg->dim(), m.left_alg->dim()), Matrix<K>(dm, dm),
                     Matrix<K>(m.right_alg->dim(), m.right_alg->dim())};
  for (size_t s = 0; s < nv; ++s) e.v(v_slots[s].first, v_slots[s].second) = (*sol)[s];
  Matrix<K> free_d(free_alg.dim(), free_alg.dim());
  for (size_t s = 0; s < nf; ++s)
    if (!FieldOps<K>::is_zero((*sol)[nv + s])) free_d += der_free[s] * (*sol)[nv + s];
  if (side == Side::LEFT) {
    e.d_left = d.matrix;
    e.d_right = std::move(free_d);
  } else {
    e.d_right = d.matrix;
    e.d_left = std::move(free_d);
  }
  if (!imp_lie_check(m, e)) throw Error("INTERNAL", "lift solution fails the Lie identity");
  return e;
}

/// Componentwise exponential of a Lie element; exact when all three matrices
/// are nilpotent.
template <class K>
ImplementerTriple<K> exponentiate_lift(const Bimodule<K>& m, const ImpLieElement<K>& e,
                                       const K& t) {
  Matrix<K> da = e.d_left * t, v = e.v * t, db = e.d_right * t;
  ImplementerTriple<K> out{AlgebraHom<K>{m.left_alg, m.left_alg, matrix_exp_nilpotent(da)},
                           matrix_exp_nilpotent(v),
                           AlgebraHom<K>{m.right_alg, m.right_alg, matrix_exp_nilpotent(db)}};
  Report rep = implementer_check(m, out);
  if (!validate_hom(out.phi).overall() || !validate_hom(out.psi).overall() || !rep.overall())
    throw Error("INTERNAL", "exponentiated lift fails the implementer identity");
  return out;
}

/// Numeric exponential of a Lie element, checked within tolerance.
template <class K>
NumericTriple exponentiate_lift_numeric(const Bimodule<K>& m, const ImpLieElement<K>& e, double t,
                                        double tol = 1e-9) {
  NumericTriple out{matrix_exp_numeric(to_double(e.d_left) * t, tol * 1e-3),
                    matrix_exp_numeric(to_double(e.v) * t, tol * 1e-3),
                    matrix_exp_numeric(to_double(e.d_right) * t, tol * 1e-3)};
  if (numeric_implementer_residual(m, out) > tol)
    throw Error("TOLERANCE", "numeric exponential violates the implementer identity");
  return out;
}

/// Implementer on the relative tensor product from matching implementers on
/// the factors: (phi, u, beta) and (beta, v, psi) combine to (phi, u (x) v, psi).
template <class K>
ImplementerTriple<K> tensor_implementer(const RelTensor<K>& mn, const Bimodule<K>& m,
                                        const Bimodule<K>& n, const ImplementerTriple<K>& s,
                                        const ImplementerTriple<K>& t) {
  if (s.psi.matrix != t.phi.matrix || !same_algebra(s.psi.source, t.phi.source))
    throw Error("MIDDLE_MISMATCH", "implementers do not share the middle automorphism");
  auto w = descend_map(mn.pres, mn.pres, kronecker(s.u, t.u));
  if (!w) throw Error("INTERNAL", "tensor implementer does not descend");
  ImplementerTriple<K> out{s.phi, std::move(*w), t.psi};
  Report rep = implementer_check(mn.bim, out);
  if (!rep.overall()) throw Error("INTERNAL", "tensor implementer fails the identity");
  return out;
}

/// Lie-algebra counterpart: (dA, v (x) 1 + 1 (x) w, dC) on M (x)_B N.
template <class K>
ImpLieElement<K> tensor_lie(const RelTensor<K>& mn, const Bimodule<K>& m, const Bimodule<K>& n,
                            const ImpLieElement<K>& e1, const ImpLieElement<K>& e2) {
  if (e1.d_right != e2.d_left) throw Error("MIDDLE_MISMATCH", "Lie elements differ in the middle");
  Matrix<K> amb = kronecker(e1.v, Matrix<K>::identity(n.dim())) +
                  kronecker(Matrix<K>::identity(m.dim()), e2.v);
  auto w = descend_map(mn.pres, mn.pres, amb);
  if (!w) throw Error("INTERNAL", "tensor Lie element does not descend");
  ImpLieElement<K> out{e1.d_left, std::move(*w), e2.d_right};
  if (!imp_lie_check(mn.bim, out)) throw Error("INTERNAL", "tensor Lie element fails the identity");
  return out;
}

/// Induced implementer on the dual: u~(xi) = psi o xi o u^{-1}, with the
/// left/right roles of phi and psi exchanged.
template <class K>
ImplementerTriple<K> dual_implementer(const Bimodule<K>& m, const DualBimodule<K>& d,
                                      const ImplementerTriple<K>& t) {
  auto uinv = inverse(t.u);
  if (!uinv) throw Error("NOT_INVERTIBLE", "implementer map is singular");
  const size_t dd = d.bim.dim();
  Matrix<K> basis_cols(m.right_alg->dim() * m.dim(), dd);
  for (size_t i = 0; i < dd; ++i) basis_cols.set_col(i, d.basis_maps[i].vectorize());
  Matrix<K> util(dd, dd);
  for (size_t i = 0; i < dd; ++i) {
    Matrix<K> img = t.psi.matrix * d.basis_maps[i] * *uinv;
    auto coords = solve(basis_cols, img.vectorize());
    if (!coords) throw Error("INTERNAL", "dual implementer leaves the dual carrier");
    util.set_col(i, *coords);
  }
  ImplementerTriple<K> out{t.psi, std::move(util), t.phi};
  Report rep = implementer_check(d.bim, out);
  if (!rep.overall()) throw Error("INTERNAL", "dual implementer fails the identity");
  return out;
}

}  // namespace superbim
