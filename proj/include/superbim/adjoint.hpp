#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "superbim/bimodule.hpp"

namespace superbim {

/// Both parity-flip isomorphisms around a relative tensor product:
///   M (x)_B Pi N  ->  Pi(M (x)_B N)   (identity on representatives)
///   Pi M (x)_B N  ->  Pi(M (x)_B N)   (x (x) y -> (-1)^{|y|} x (x) y)
template <class K>
struct PiIsos {
  RelTensor<K> mn;           // M (x)_B N
  Bimodule<K> flipped;       // Pi(M (x)_B N)
  RelTensor<K> m_pin;        // M (x)_B Pi N
  RelTensor<K> pim_n;        // Pi M (x)_B N
  Matrix<K> iso_right;       // m_pin -> flipped
  Matrix<K> iso_left;        // pim_n -> flipped
};

template <class K>
PiIsos<K> pi_isos(const Bimodule<K>& m, const Bimodule<K>& n) {
  PiIsos<K> out;
  out.mn = relative_tensor(m, n);
  out.flipped = parity_flip(out.mn.bim);
  out.m_pin = relative_tensor(m, parity_flip(n));
  out.pim_n = relative_tensor(parity_flip(m), n);

  const size_t amb = m.dim() * n.dim();
  Matrix<K> ident = Matrix<K>::identity(amb);
  auto d1 = descend_map(out.m_pin.pres, out.mn.pres, ident);
  if (!d1) throw Error("INTERNAL", "identity fails to descend between flip presentations");
  out.iso_right = std::move(*d1);

  Matrix<K> signed_id(amb, amb);
  for (size_t i = 0; i < m.dim(); ++i)
    for (size_t j = 0; j < n.dim(); ++j)
      signed_id(i * n.dim() + j, i * n.dim() + j) = parity_sign<K>(n.space.parity[j]);
  auto d2 = descend_map(out.pim_n.pres, out.mn.pres, signed_id);
  if (!d2) throw Error("INTERNAL", "signed map fails to descend between flip presentations");
  out.iso_left = std::move(*d2);

  auto verify = [&](const Bimodule<K>& src, const Matrix<K>& u, const char* which) {
    if (!is_intertwiner(src, out.flipped, u) ||
        !matrix_has_parity(src.space, out.flipped.space, u, 0) || !inverse(u))
      throw Error("INTERNAL", std::string("flip isomorphism check failed: ") + which);
  };
  verify(out.m_pin.bim, out.iso_right, "right");
  verify(out.pim_n.bim, out.iso_left, "left");
  return out;
}

/// The canonical map M_psi (x)_B B_phi -> M_{psi o phi}, m (x) b -> m <| psi(b),
/// verified to be a well-defined even invertible intertwiner.
template <class K>
struct CompositorResult {
  RelTensor<K> source;   // M_psi (x)_B B_phi
  Bimodule<K> target;    // M_{psi o phi}
  Matrix<K> map;
};

template <class K>
CompositorResult<K> compositor(const AlgebraHom<K>& phi, const AlgebraHom<K>& psi,
                               const Bimodule<K>& m) {
  if (!same_algebra(psi.target, m.right_alg) || !same_algebra(phi.target, psi.source))
    throw Error("TYPE", "compositor data not composable");
  const auto& B = *psi.source;
  CompositorResult<K> out;
  Bimodule<K> m_psi = twist(m, identity_hom(m.left_alg), psi);
  Bimodule<K> b_phi = twisted_identity(phi);
  out.source = relative_tensor(m_psi, b_phi);
  out.target = twist(m, identity_hom(m.left_alg), compose_homs(psi, phi));

  Matrix<K> amb(m.dim(), m.dim() * B.dim());
  for (size_t i = 0; i < m.dim(); ++i)
    for (size_t b = 0; b < B.dim(); ++b) {
      Vec<K> img = m.ract(psi.apply_basis(b)).col(i);
      for (size_t r = 0; r < m.dim(); ++r) amb(r, i * B.dim() + b) = img[r];
    }
  for (const auto& rel : out.source.pres.relations)
    if (!is_zero_vec(amb.apply(rel))) throw Error("INTERNAL", "compositor map not balanced");
  out.map = amb * out.source.pres.section;

  if (!is_intertwiner(out.source.bim, out.target, out.map) ||
      !matrix_has_parity(out.source.bim.space, out.target.space, out.map, 0) || !inverse(out.map))
    throw Error("INTERNAL", "compositor is not an even invertible intertwiner");
  return out;
}

/// Exact commutativity of the two composite reassociations of
/// D_tau (x) C_psi (x) B_phi down to D_{tau o psi o phi}.
template <class K>
Report compositor_coherence(const AlgebraHom<K>& phi, const AlgebraHom<K>& psi,
                            const AlgebraHom<K>& tau) {
  Report rep;
  rep.subject = "compositor coherence";
  const auto& B = *phi.target;
  const auto& C = *psi.target;
  const auto& D = *tau.target;
  AlgebraPtr<K> dptr = tau.target;

  Bimodule<K> d_tau = twisted_identity(tau);
  Bimodule<K> c_psi = twisted_identity(psi);
  Bimodule<K> b_phi = twisted_identity(phi);
  RelTensor<K> q1 = relative_tensor(d_tau, c_psi);
  RelTensor<K> s = relative_tensor(q1.bim, b_phi);

  // Route 1: collapse the (D, C) pair first, then the remaining pair.
  CompositorResult<K> c1 = compositor(psi, tau, identity_bimodule(dptr));
  RelTensor<K> q2 = relative_tensor(c1.target, b_phi);
  auto lifted = descend_map(s.pres, q2.pres, kronecker(c1.map, Matrix<K>::identity(B.dim())));
  rep.add("route1 descends", lifted.has_value());
  if (!lifted) return rep;
  CompositorResult<K> c2 = compositor(phi, compose_homs(tau, psi), identity_bimodule(dptr));
  Matrix<K> route1 = c2.map * *lifted;

  // Route 2: collapse the (C, B) pair inside the middle slot first.
  CompositorResult<K> c_inner = compositor(phi, psi, identity_bimodule(psi.target));
  RelTensor<K> q3 = relative_tensor(d_tau, c_inner.target);
  // Ambient map (D (x) C) (x) B -> D (x) C sending (d (x) c) (x) b to d (x) c psi(b).
  size_t dD = D.dim(), dC = C.dim(), dB = B.dim();
  Matrix<K> g(dD * dC, dD * dC * dB);
  for (size_t i = 0; i < dD; ++i)
    for (size_t j = 0; j < dC; ++j)
      for (size_t b = 0; b < dB; ++b) {
        Vec<K> img = C.rmul(psi.apply_basis(b)).col(j);
        for (size_t r = 0; r < dC; ++r) g(i * dC + r, (i * dC + j) * dB + b) = img[r];
      }
  Matrix<K> n0 = q3.pres.projection * g *
                 kronecker(q1.pres.section, Matrix<K>::identity(dB));
  bool balanced = true;
  for (const auto& rel : s.pres.relations)
    if (!is_zero_vec(n0.apply(rel))) {
      balanced = false;
      break;
    }
  rep.add("route2 descends", balanced);
  if (!balanced) return rep;
  CompositorResult<K> c3 = compositor(compose_homs(psi, phi), tau, identity_bimodule(dptr));
  Matrix<K> route2 = c3.map * n0 * s.pres.section;

  rep.add("square commutes", route1 == route2);
  return rep;
}

// ---------------------------------------------------------------------------
// Adjunctions and invertibility
// ---------------------------------------------------------------------------

/// Adjunction data for the canonical candidate L = dual(M): the evaluation
/// L (x)_A M -> B and a coevaluation A -> M (x)_B L solving both triangle
/// identities. The coevaluation is determined by its value on the unit.
template <class K>
struct Adjunction {
  DualBimodule<K> dual;     // L
  RelTensor<K> lm;          // L (x)_A M
  RelTensor<K> ml;          // M (x)_B L
  Matrix<K> eps;            // dim B x dim(lm)
  Matrix<K> eta;            // dim(ml) x dim A
  bool eps_invertible = false;
  bool eta_invertible = false;
};

/// True when the matrix is non-square or singular.
template <class K>
bool det_square_or_zero(const Matrix<K>& m) {
  if (m.rows() != m.cols()) return true;
  return det(m) == K(0);
}

template <class K>
std::optional<Adjunction<K>> left_adjoint(const Bimodule<K>& m) {
  const auto& A = *m.left_alg;
  const auto& B = *m.right_alg;
  Adjunction<K> adj;
  adj.dual = dual(m);
  const auto& L = adj.dual.bim;
  const auto& xis = adj.dual.basis_maps;
  const size_t dm = m.dim(), dl = L.dim(), db = B.dim(), da = A.dim();

  adj.lm = relative_tensor(L, m);
  adj.ml = relative_tensor(m, L);

  // Evaluation on the ambient L (x) M, column (u, i) -> xi_u(m_i).
  Matrix<K> e0(db, dl * dm);
  for (size_t u = 0; u < dl; ++u)
    for (size_t i = 0; i < dm; ++i) {
      Vec<K> v = xis[u].col(i);
      for (size_t r = 0; r < db; ++r) e0(r, u * dm + i) = v[r];
    }
  for (const auto& rel : adj.lm.pres.relations)
    if (!is_zero_vec(e0.apply(rel))) throw Error("INTERNAL", "evaluation map not balanced");
  adj.eps = e0 * adj.lm.pres.section;

  // Unknown: w in M (x)_B L with eta(a) = a |> w. Triangle composites are
  // linear in the ambient lift c = section * w.
  const size_t dml = adj.ml.bim.dim();
  auto triangle_m = [&](const Vec<K>& w) {
    Vec<K> c = adj.ml.pres.lift(w);
    Matrix<K> t(dm, dm);
    for (size_t i = 0; i < dm; ++i)
      for (size_t u = 0; u < dl; ++u) {
        const K& coeff = c[i * dl + u];
        if (coeff == K(0)) continue;
        for (size_t j = 0; j < dm; ++j) {
          Vec<K> col = m.ract(xis[u].col(j)).col(i);
          for (size_t r = 0; r < dm; ++r)
            if (!(col[r] == K(0))) t(r, j) += coeff * col[r];
        }
      }
    return t;
  };
  auto triangle_l = [&](const Vec<K>& w) {
    Vec<K> c = adj.ml.pres.lift(w);
    Matrix<K> t(dl, dl);
    for (size_t i = 0; i < dm; ++i)
      for (size_t u = 0; u < dl; ++u) {
        const K& coeff = c[i * dl + u];
        if (coeff == K(0)) continue;
        for (size_t v = 0; v < dl; ++v) {
          Vec<K> col = L.lact(xis[v].col(i)).col(u);
          for (size_t r = 0; r < dl; ++r)
            if (!(col[r] == K(0))) t(r, v) += coeff * col[r];
        }
      }
    return t;
  };

  // Assemble the affine system row-block by row-block.
  std::vector<Vec<K>> rows;
  Vec<K> rhs;
  auto add_matrix_condition = [&](auto&& fn, const Matrix<K>& target, size_t out_r, size_t out_c) {
    std::vector<Matrix<K>> images;
    images.reserve(dml);
    for (size_t p = 0; p < dml; ++p) images.push_back(fn(unit_vec<K>(dml, p)));
    for (size_t r = 0; r < out_r; ++r)
      for (size_t cidx = 0; cidx < out_c; ++cidx) {
        Vec<K> row(dml, K(0));
        for (size_t p = 0; p < dml; ++p) row[p] = images[p](r, cidx);
        rows.push_back(std::move(row));
        rhs.push_back(target(r, cidx));
      }
  };
  add_matrix_condition(triangle_m, Matrix<K>::identity(dm), dm, dm);
  add_matrix_condition(triangle_l, Matrix<K>::identity(dl), dl, dl);
  // Centrality a |> w = w <| a and evenness of w.
  for (size_t a = 0; a < da; ++a) {
    Matrix<K> diff = adj.ml.bim.left[a] - adj.ml.bim.right[a];
    for (size_t r = 0; r < dml; ++r) {
      rows.push_back(diff.row(r));
      rhs.push_back(K(0));
    }
  }
  for (size_t p = 0; p < dml; ++p)
    if (adj.ml.bim.space.parity[p]) {
      Vec<K> row(dml, K(0));
      row[p] = K(1);
      rows.push_back(std::move(row));
      rhs.push_back(K(0));
    }

  auto w = solve(rows_matrix(rows, dml), rhs);
  if (!w) return std::nullopt;

  adj.eta = Matrix<K>(dml, da);
  for (size_t a = 0; a < da; ++a) adj.eta.set_col(a, adj.ml.bim.lact(unit_vec<K>(da, a)).apply(*w));
  // eta(unit) must reproduce w itself.
  if (adj.eta.apply(A.unit) != *w) throw Error("INTERNAL", "coevaluation unit inconsistency");

  adj.eps_invertible = adj.lm.bim.dim() == db && !(det_square_or_zero(adj.eps));
  adj.eta_invertible = dml == da && !(det_square_or_zero(adj.eta));
  return adj;
}

/// Invertibility with certificate: the canonical dual adjunction must exist
/// and both structure maps must be bijective; the inverse bimodule is the dual.
template <class K>
struct InvertibilityCertificate {
  bool invertible = false;
  std::string reason;                  // set when not invertible
  std::optional<Adjunction<K>> adj;    // carries inverse + both isomorphisms
};

template <class K>
InvertibilityCertificate<K> is_invertible_bimodule(const Bimodule<K>& m) {
  InvertibilityCertificate<K> out;
  auto adj = left_adjoint(m);
  if (!adj) {
    out.reason = "no adjunction for the dual candidate";
    return out;
  }
  out.adj = std::move(adj);
  if (!out.adj->eps_invertible) {
    out.reason = "evaluation not invertible";
    return out;
  }
  if (!out.adj->eta_invertible) {
    out.reason = "coevaluation not invertible";
    return out;
  }
  out.invertible = true;
  return out;
}

}  // namespace superbim
