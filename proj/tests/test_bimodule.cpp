#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace superbim;
using K = Rational;

namespace {

struct Fixtures {
  AlgebraPtr<K> k = field_algebra<K>();
  AlgebraPtr<K> l1 = exterior_algebra<K>(1);
  AlgebraPtr<K> l2 = exterior_algebra<K>(2);
  AlgebraPtr<K> m2 = matrix_algebra<K>(2);
  AlgebraPtr<K> cl10 = clifford_algebra<K>(1, 0);
  Bimodule<K> m362 = sub_bimodule(l1, {unit_vec<K>(2, 1)}, "m-ex362");
  Bimodule<K> col = column_module<K>(m2, k);
  Bimodule<K> row = row_module<K>(k, m2);
};

Fixtures& fx() {
  static Fixtures f;
  return f;
}

}  // namespace

TEST_CASE("identity bimodules validate and tensor to themselves") {
  for (const auto& a : {fx().k, fx().l2, fx().m2, fx().cl10}) {
    Bimodule<K> id = identity_bimodule(a);
    REQUIRE(validate_bimodule(id).overall());
    RelTensor<K> r = relative_tensor(id, id);
    REQUIRE(r.bim.dim() == a->dim());
    REQUIRE(validate_bimodule(r.bim).overall());
  }
}

TEST_CASE("perturbed right action fails validation with a named check") {
  Bimodule<K> broken = fx().m362;
  broken.right[1](0, 0) += K(1);
  Report rep = validate_bimodule(broken);
  REQUIRE_FALSE(rep.overall());
  REQUIRE_FALSE(rep.first_failure()->name.empty());
}

TEST_CASE("twisting by identities is the identity") {
  Bimodule<K> t = twist(fx().m362, identity_hom(fx().l1), identity_hom(fx().l1));
  REQUIRE(t.left == fx().m362.left);
  REQUIRE(t.right == fx().m362.right);
}

TEST_CASE("twist type errors are reported") {
  REQUIRE_THROWS_AS(twist(fx().m362, identity_hom(fx().m2), identity_hom(fx().l1)), Error);
}

TEST_CASE("parity flip is an involution and flips the grading") {
  Bimodule<K> p = parity_flip(fx().m362);
  REQUIRE(p.space.parity[0] == 0);
  Bimodule<K> pp = parity_flip(p);
  REQUIRE(pp.space.parity == fx().m362.space.parity);
  REQUIRE(pp.left == fx().m362.left);
  REQUIRE(pp.right == fx().m362.right);
  REQUIRE(validate_bimodule(p).overall());
}

TEST_CASE("flipped ground module is purely odd") {
  Bimodule<K> pk = parity_flip(identity_bimodule(fx().k));
  REQUIRE(pk.space.even_dim() == 0);
  REQUIRE(pk.space.odd_dim() == 1);
}

TEST_CASE("dual of an identity bimodule has the algebra's dimension") {
  for (const auto& a : {fx().k, fx().l1, fx().m2}) {
    DualBimodule<K> d = dual(identity_bimodule(a));
    REQUIRE(d.bim.dim() == a->dim());
    REQUIRE(validate_bimodule(d.bim).overall());
    // Right-linear endomaps of the regular module are left multiplications.
    for (const auto& xi : d.basis_maps) {
      Vec<K> x = xi.col(0);  // hits the unit only when e_0 participates; use
      (void)x;               // the defining relation instead:
      for (size_t b = 0; b < a->dim(); ++b)
        REQUIRE(xi * a->rmul_basis(b) == a->rmul_basis(b) * xi);
    }
  }
}

TEST_CASE("dual of the flipped ground module is purely odd") {
  DualBimodule<K> d = dual(parity_flip(identity_bimodule(fx().k)));
  REQUIRE(d.bim.dim() == 1);
  REQUIRE(d.bim.space.odd_dim() == 1);
}

TEST_CASE("dual of the column module is the row module") {
  DualBimodule<K> d = dual(fx().col);
  REQUIRE(d.bim.dim() == 2);
  REQUIRE(same_algebra(d.bim.left_alg, fx().k));
  REQUIRE(same_algebra(d.bim.right_alg, fx().m2));
  REQUIRE(find_invertible_intertwiner(d.bim, fx().row).found.has_value());
}

TEST_CASE("exterior tensor against the ground field is the identity reindexing") {
  Bimodule<K> idk = identity_bimodule(fx().k);
  Bimodule<K> t = exterior_tensor(fx().m362, idk, fx().l1, fx().l1);
  REQUIRE(t.dim() == 1);
  REQUIRE(validate_bimodule(t).overall());
  REQUIRE(t.left == fx().m362.left);
}

TEST_CASE("exterior tensor of the two lines is sign-consistent") {
  // Lambda^1 (x) Lambda^1 over the tensor algebra; a one-dimensional module.
  auto t_alg = graded_tensor(fx().l1, fx().l1);
  Bimodule<K> t = exterior_tensor(fx().m362, fx().m362, t_alg, t_alg);
  REQUIRE(t.dim() == 1);
  REQUIRE(validate_bimodule(t).overall());
  // Both tensor-algebra generators act as zero on the left.
  REQUIRE(t.lact(unit_vec<K>(4, 1)).is_zero());
  REQUIRE(t.lact(unit_vec<K>(4, 2)).is_zero());
}

TEST_CASE("exterior tensor of two implementing modules reproduces the counterexample") {
  // identity (x) Lambda^1 over Lambda (x) Lambda: under the identification
  // with the two-generator exterior algebra this is the two-dimensional
  // module that implements on neither side.
  auto t_alg = graded_tensor(fx().l1, fx().l1);
  Bimodule<K> id1 = identity_bimodule(fx().l1);
  Bimodule<K> t = exterior_tensor(id1, fx().m362, t_alg, t_alg);
  REQUIRE(t.dim() == 2);
  REQUIRE(validate_bimodule(t).overall());
  ImplementingFlags f = implementing_flags(t);
  REQUIRE_FALSE(f.left);
  REQUIRE_FALSE(f.right);
  // Identified with the counterexample module over the two-generator algebra:
  // transport the bimodule along the generator isomorphism and compare.
  auto l2 = fx().l2;
  Vec<K> g1(4, K(0)), g2(4, K(0));
  g1[2] = K(1);
  g2[1] = K(1);
  AlgebraHom<K> iso =
      extend_from_generators(l2, t_alg, {{unit_vec<K>(4, 1), g1}, {unit_vec<K>(4, 2), g2}});
  Bimodule<K> transported = twist(t, iso, iso);
  Bimodule<K> m363 = sub_bimodule(l2, {unit_vec<K>(4, 2), unit_vec<K>(4, 3)}, "m-ex363");
  REQUIRE(find_invertible_intertwiner(transported, m363).found.has_value());
}

TEST_CASE("duals over the ground field preserve dimension") {
  for (const Bimodule<K>* m : {&fx().col}) {
    REQUIRE(dual(*m).bim.dim() == m->dim());
  }
  Bimodule<K> line = fx().m362;
  line.right_alg = fx().k;
  line.right = {Matrix<K>::identity(1)};
  REQUIRE(dual(line).bim.dim() == 1);
}

TEST_CASE("relative tensor dimension is bounded by the product and reaches it iff unbalanced") {
  Bimodule<K> idk = identity_bimodule(fx().k);
  RelTensor<K> r = relative_tensor(idk, idk);
  REQUIRE(r.bim.dim() == 1);
  RelTensor<K> rc = relative_tensor(fx().col, idk);
  REQUIRE(rc.bim.dim() == 2);
  REQUIRE(find_invertible_intertwiner(rc.bim, fx().col).found.has_value());
  RelTensor<K> rr = relative_tensor(fx().col, fx().row);
  REQUIRE(rr.bim.dim() <= fx().col.dim() * fx().row.dim());
  REQUIRE(rr.bim.dim() == 4);  // Morita: col (x)_k row is the matrix algebra
}

TEST_CASE("middle algebra mismatch is a type error") {
  REQUIRE_THROWS_AS(relative_tensor(fx().col, fx().m362), Error);
}

TEST_CASE("intertwiner spaces: Schur and graded mismatch cases") {
  Bimodule<K> id2 = identity_bimodule(fx().m2);
  auto [ev, od] = intertwiner_space(id2, id2);
  REQUIRE(ev.size() == 1);
  REQUIRE(od.empty());
  Bimodule<K> idk = identity_bimodule(fx().k);
  auto [ev2, od2] = intertwiner_space(parity_flip(idk), idk);
  REQUIRE(ev2.empty());
  REQUIRE(od2.size() == 1);
}

TEST_CASE("invertible intertwiner search certificates") {
  Bimodule<K> idk = identity_bimodule(fx().k);
  SECTION("identity found") {
    auto r = find_invertible_intertwiner(idk, idk);
    REQUIRE(r.found.has_value());
  }
  SECTION("zero even Hom for opposite gradings") {
    auto r = find_invertible_intertwiner(parity_flip(idk), idk);
    REQUIRE_FALSE(r.found.has_value());
    REQUIRE(r.reason == NoInvertibleReason::ZERO_EVEN_HOM);
  }
  SECTION("dimension mismatch") {
    auto r = find_invertible_intertwiner(idk, identity_bimodule(fx().l1));
    REQUIRE_FALSE(r.found.has_value());
    REQUIRE(r.reason == NoInvertibleReason::DIM_MISMATCH);
  }
  SECTION("flip of a Clifford identity is a twist by the grading automorphism") {
    Bimodule<K> pi = parity_flip(identity_bimodule(fx().cl10));
    Bimodule<K> tw = twisted_identity(grading_automorphism(fx().cl10));
    auto r = find_invertible_intertwiner(pi, tw);
    REQUIRE(r.found.has_value());
    REQUIRE(is_intertwiner(pi, tw, *r.found));
    REQUIRE(matrix_has_parity(pi.space, tw.space, *r.found, 0));
  }
  SECTION("identically singular family") {
    // Two orthogonal lines inside k + k: Hom is 2-dimensional but every even
    // map between the swapped modules is singular... build the direct sum of
    // a line and a zero-acting line over kk.
    auto kk = direct_sum(fx().k, fx().k);
    // Module X: coordinate 0 acted by the first summand, coordinate 1 by the
    // second; module Y: both coordinates acted by the first summand.
    Bimodule<K> x, y;
    x.left_alg = y.left_alg = kk;
    x.right_alg = y.right_alg = fx().k;
    x.space = GradedSpace::even(2);
    y.space = GradedSpace::even(2);
    Matrix<K> p0(2, 2), p1(2, 2), q0(2, 2);
    p0(0, 0) = K(1);
    p1(1, 1) = K(1);
    q0(0, 0) = K(1);
    q0(1, 1) = K(1);
    x.left = {p0, p1};
    x.right = {Matrix<K>::identity(2)};
    y.left = {q0, Matrix<K>(2, 2)};
    y.right = {Matrix<K>::identity(2)};
    REQUIRE(validate_bimodule(x).overall());
    REQUIRE(validate_bimodule(y).overall());
    auto r = find_invertible_intertwiner(x, y);
    REQUIRE_FALSE(r.found.has_value());
    REQUIRE(r.reason == NoInvertibleReason::SINGULAR_FAMILY);
  }
}

TEST_CASE("flip isomorphisms around the relative tensor product") {
  Bimodule<K> id1 = identity_bimodule(fx().l1);
  PiIsos<K> p = pi_isos(id1, id1);
  REQUIRE(p.mn.bim.dim() == 2);
  REQUIRE(inverse(p.iso_left).has_value());
  REQUIRE(inverse(p.iso_right).has_value());
  PiIsos<K> q = pi_isos(fx().m362, identity_bimodule(fx().l1));
  REQUIRE(q.mn.bim.dim() == 1);
  Bimodule<K> idk = identity_bimodule(fx().k);
  PiIsos<K> r = pi_isos(idk, idk);
  REQUIRE(r.iso_left.rows() == 1);
}

TEST_CASE("compositor is the unitor for identity homomorphisms") {
  Bimodule<K> id2 = identity_bimodule(fx().m2);
  CompositorResult<K> c =
      compositor(identity_hom(fx().m2), identity_hom(fx().m2), id2);
  REQUIRE(c.source.bim.dim() == 4);
  REQUIRE(inverse(c.map).has_value());
}

TEST_CASE("compositor handles non-invertible homomorphisms") {
  auto kk = direct_sum(fx().k, fx().k);
  Matrix<K> pr(1, 2);
  pr(0, 0) = K(1);
  AlgebraHom<K> proj{kk, fx().k, pr};
  REQUIRE(validate_hom(proj).overall());
  CompositorResult<K> c = compositor(proj, identity_hom(fx().k), identity_bimodule(fx().k));
  REQUIRE(c.source.bim.dim() == 1);
}

TEST_CASE("coherence square for three scaling automorphisms commutes exactly") {
  auto l1 = fx().l1;
  auto scale = [&](long v) {
    Matrix<K> m(2, 2);
    m(0, 0) = K(1);
    m(1, 1) = K(v);
    return AlgebraHom<K>{l1, l1, m};
  };
  Report rep = compositor_coherence(scale(2), scale(3), scale(5));
  REQUIRE(rep.overall());
}

TEST_CASE("identity-twist composition law over the automorphism pool") {
  auto l1 = fx().l1;
  auto scale = [&](long v) {
    Matrix<K> m(2, 2);
    m(0, 0) = K(1);
    m(1, 1) = K(v);
    return AlgebraHom<K>{l1, l1, m};
  };
  for (long a : {2L, 3L})
    for (long b : {5L, 7L}) {
      Bimodule<K> lhs = relative_tensor(twisted_identity(scale(a)), twisted_identity(scale(b))).bim;
      Bimodule<K> rhs = twisted_identity(compose_homs(scale(a), scale(b)));
      REQUIRE(find_invertible_intertwiner(lhs, rhs).found.has_value());
    }
}

TEST_CASE("adjunctions and invertibility certificates") {
  SECTION("identity bimodule is invertible") {
    auto cert = is_invertible_bimodule(identity_bimodule(fx().l2));
    REQUIRE(cert.invertible);
  }
  SECTION("column module is a Morita equivalence") {
    auto cert = is_invertible_bimodule(fx().col);
    REQUIRE(cert.invertible);
    REQUIRE(cert.adj->lm.bim.dim() == 1);   // dual (x)_{M2} col ~ k
    REQUIRE(cert.adj->ml.bim.dim() == 4);   // col (x)_k dual ~ M2
  }
  SECTION("exterior line is not invertible") {
    auto cert = is_invertible_bimodule(fx().m362);
    REQUIRE_FALSE(cert.invertible);
    REQUIRE_FALSE(cert.reason.empty());
  }
  SECTION("twisted identity along a projection has an adjoint but no inverse") {
    auto kk = direct_sum(fx().k, fx().k);
    Matrix<K> pr(1, 2);
    pr(0, 0) = K(1);
    AlgebraHom<K> proj{kk, fx().k, pr};
    Bimodule<K> bphi = twisted_identity(proj);  // k as a (k, k+k)-bimodule
    auto adj = left_adjoint(bphi);
    REQUIRE(adj.has_value());
    REQUIRE_FALSE(adj->eps_invertible);
    auto cert = is_invertible_bimodule(bphi);
    REQUIRE_FALSE(cert.invertible);
  }
  SECTION("twisted identity along an isomorphism is invertible") {
    Vec<K> g(4, K(0));
    g[0] = K(1);
    g[1] = K(1);
    g[3] = K(1);
    AlgebraHom<K> ig = inner_automorphism(fx().m2, g);
    auto cert = is_invertible_bimodule(twisted_identity(ig));
    REQUIRE(cert.invertible);
  }
}

TEST_CASE("flip isomorphisms exist for every composable catalog pair (property)") {
  std::vector<std::pair<Bimodule<K>, Bimodule<K>>> pairs;
  pairs.emplace_back(fx().col, identity_bimodule(fx().k));
  pairs.emplace_back(fx().row, fx().col);
  pairs.emplace_back(fx().m362, fx().m362);
  for (auto& [m, n] : pairs) {
    PiIsos<K> p = pi_isos(m, n);
    REQUIRE(is_intertwiner(p.m_pin.bim, p.flipped, p.iso_right));
    REQUIRE(is_intertwiner(p.pim_n.bim, p.flipped, p.iso_left));
  }
}
