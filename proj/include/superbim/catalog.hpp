#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "superbim/json_io.hpp"
#include "superbim/morita.hpp"

namespace superbim {

// ---------------------------------------------------------------------------
// Built-in objects
// ---------------------------------------------------------------------------

namespace builtins {

/// k + V with dim V = 2 and all products inside V zero.
template <class K>
AlgebraPtr<K> dual_numbers_plane() {
  SuperAlgebra<K> a;
  a.space = GradedSpace::even(3);
  a.space.labels = {"1", "v1", "v2"};
  a.structure.assign(27, K(0));
  a.c(0, 0, 0) = K(1);
  a.c(0, 1, 1) = K(1);
  a.c(1, 0, 1) = K(1);
  a.c(0, 2, 2) = K(1);
  a.c(2, 0, 2) = K(1);
  a.unit = {K(1), K(0), K(0)};
  a.name = "k+V2";
  return make_algebra(std::move(a));
}

/// The scaling automorphism of the one-generator exterior algebra.
template <class K>
AlgebraHom<K> exterior_scaling(const AlgebraPtr<K>& l1, long lambda) {
  Matrix<K> m(2, 2);
  m(0, 0) = K(1);
  m(1, 1) = K(lambda);
  return AlgebraHom<K>{l1, l1, std::move(m)};
}

/// Automorphism of the two-generator exterior algebra induced by the plane
/// rotation e1 -> -e2, e2 -> e1.
template <class K>
AlgebraHom<K> exterior_flip(const AlgebraPtr<K>& l2) {
  Vec<K> img1(4, K(0)), img2(4, K(0));
  img1[2] = K(-1);
  img2[1] = K(1);
  return extend_from_generators(l2, l2,
                                {{unit_vec<K>(4, 1), img1}, {unit_vec<K>(4, 2), img2}});
}

/// Block-swap automorphism of M2 + M2.
template <class K>
AlgebraHom<K> block_swap(const AlgebraPtr<K>& m2m2) {
  Matrix<K> fl(8, 8);
  for (size_t i = 0; i < 4; ++i) {
    fl(i, 4 + i) = K(1);
    fl(4 + i, i) = K(1);
  }
  return AlgebraHom<K>{m2m2, m2m2, std::move(fl)};
}

/// Homomorphism k + V2 -> M4 whose V-image contains matrices of rank 1 and 2.
template <class K>
AlgebraHom<K> rank_jump_hom(const AlgebraPtr<K>& a, const AlgebraPtr<K>& m4) {
  Matrix<K> hm(16, 3);
  for (size_t u = 0; u < 4; ++u) hm(u * 4 + u, 0) = K(1);
  hm(2 * 4 + 0, 1) = K(1);              // v1 -> E_{2,0}, rank 1
  hm(2 * 4 + 1, 2) = K(1);              // v2 -> E_{2,1} + E_{3,0}, rank 2
  hm(3 * 4 + 0, 2) = K(1);
  return AlgebraHom<K>{a, m4, std::move(hm)};
}

/// Prism (cylinder) nerve: two triangle cycles joined by vertical and
/// diagonal edges; six triangles, no tetrahedra, nontrivial first cohomology.
inline std::shared_ptr<const Nerve> prism_nerve() {
  Nerve n;
  n.n_vertices = 6;
  n.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5},
             {0, 3}, {1, 4}, {2, 5}, {0, 4}, {0, 5}, {1, 5}};
  n.triangles = {{0, 1, 4}, {0, 3, 4}, {0, 2, 5}, {0, 3, 5}, {1, 2, 5}, {1, 4, 5}};
  return std::make_shared<const Nerve>(std::move(n));
}

/// Clifford bundle over a nerve with grading twists on the edges flagged by
/// the Z2 cochain eps (which must be a cocycle).
template <class K>
AlgebraBundle<K> eta_twisted_bundle(std::shared_ptr<const Nerve> nerve, const AlgebraPtr<K>& a,
                                    const std::vector<uint8_t>& eps) {
  AlgebraBundle<K> d;
  d.nerve = std::move(nerve);
  d.fiber.assign(d.nerve->n_vertices, a);
  AlgebraHom<K> eta = grading_automorphism(a);
  for (size_t e = 0; e < d.nerve->edges.size(); ++e)
    d.transition.push_back(eps[e] ? eta : identity_hom(a));
  Report rep = validate_algebra_bundle(d);
  if (!rep.overall()) throw Error("INTERNAL", "eta-twisted bundle invalid");
  return d;
}

/// Inner-automorphism M2-bundle from a family of invertible even elements g
/// per edge; the homomorphism cocycle holds whenever the g-products agree up
/// to scalars.
template <class K>
AlgebraBundle<K> inner_bundle(std::shared_ptr<const Nerve> nerve, const AlgebraPtr<K>& alg,
                              const std::vector<Vec<K>>& g) {
  AlgebraBundle<K> d;
  d.nerve = std::move(nerve);
  d.fiber.assign(d.nerve->n_vertices, alg);
  for (size_t e = 0; e < d.nerve->edges.size(); ++e)
    d.transition.push_back(inner_automorphism(alg, g[e]));
  Report rep = validate_algebra_bundle(d);
  if (!rep.overall()) throw Error("INTERNAL", "inner bundle invalid");
  return d;
}

}  // namespace builtins

template <class K>
Workspace<K> builtin_workspace();

template <>
inline Workspace<Rational> builtin_workspace<Rational>() {
  using K = Rational;
  Workspace<K> ws;
  auto reg = [&](const AlgebraPtr<K>& a, const std::string& name) {
    ws.algebras[name] = a;
    return a;
  };
  auto k = reg(field_algebra<K>(), "k");
  auto l1 = reg(exterior_algebra<K>(1), "exterior1");
  auto l2 = reg(exterior_algebra<K>(2), "exterior2");
  reg(exterior_algebra<K>(3), "exterior3");
  reg(exterior_algebra<K>(4), "exterior4");
  auto m2 = reg(matrix_algebra<K>(2), "mat2");
  reg(matrix_algebra<K>(1), "mat1");
  reg(matrix_algebra<K>(3), "mat3");
  auto m4 = reg(matrix_algebra<K>(4), "mat4");
  auto gm = reg(graded_matrix_algebra<K>(1, 1), "gmat11");
  for (size_t p = 0; p <= 4; ++p)
    for (size_t q = 0; p + q <= 4; ++q)
      if (p + q >= 1)
        reg(clifford_algebra<K>(p, q), "cl" + std::to_string(p) + std::to_string(q));
  auto kk = reg(direct_sum(k, k), "kk");
  auto km2 = reg(direct_sum(k, m2), "k-m2");
  auto m2m2 = reg(direct_sum(m2, m2), "m2-m2");
  auto a366 = reg(builtins::dual_numbers_plane<K>(), "a-ex366");
  auto cl10 = ws.algebras["cl10"];

  ws.homs["eta-cl10"] = grading_automorphism(cl10);
  ws.homs["eta-exterior1"] = grading_automorphism(l1);
  ws.homs["phi2"] = builtins::exterior_scaling(l1, 2);
  ws.homs["phi3"] = builtins::exterior_scaling(l1, 3);
  ws.homs["phi5"] = builtins::exterior_scaling(l1, 5);
  ws.homs["flip-exterior2"] = builtins::exterior_flip(l2);
  ws.homs["flip-m2-m2"] = builtins::block_swap(m2m2);
  ws.homs["phi-ex366"] = builtins::rank_jump_hom(a366, m4);
  {
    Matrix<K> pr(1, 2);
    pr(0, 0) = K(1);
    ws.homs["proj-kk-k"] = AlgebraHom<K>{kk, k, std::move(pr)};
    Vec<K> g(4, K(0));
    g[0 * 2 + 0] = K(1);
    g[0 * 2 + 1] = K(1);
    g[1 * 2 + 1] = K(1);  // g = [[1,1],[0,1]]
    ws.homs["inner-mat2"] = inner_automorphism(m2, g);
  }

  auto regm = [&](Bimodule<K> m, const std::string& name) {
    m.name = name;
    ws.bimodules[name] = std::move(m);
  };
  for (const auto& nm : {"k", "exterior1", "exterior2", "mat2", "mat3", "gmat11", "cl10", "cl11",
                         "k-m2", "m2-m2", "kk"})
    regm(identity_bimodule(ws.algebras[nm]), std::string("id-") + nm);
  regm(sub_bimodule(l1, {unit_vec<K>(2, 1)}, "m-ex362"), "m-ex362");
  {
    // The same carrier as an (exterior1, k)-bimodule.
    Bimodule<K> m = ws.bimodules["m-ex362"];
    m.right_alg = k;
    m.right = {Matrix<K>::identity(1)};
    regm(std::move(m), "m-ex362k");
  }
  regm(sub_bimodule(l2, {unit_vec<K>(4, 2), unit_vec<K>(4, 3)}, "m-ex363"), "m-ex363");
  regm(sub_bimodule(l2, {unit_vec<K>(4, 1), unit_vec<K>(4, 3)}, "m-ex49"), "m-ex49");
  regm(column_module<K>(m2, k), "col-m2");
  regm(row_module<K>(k, m2), "row-m2");
  regm(direct_sum_bimodule(ws.bimodules["row-m2"], identity_bimodule(m2), km2, m2m2), "m-5v4-n");
  regm(direct_sum_bimodule(ws.bimodules["col-m2"], identity_bimodule(m2), m2m2, km2), "m-5v4-m");
  regm(twisted_identity(ws.homs["phi-ex366"]), "b-phi-366");
  regm(parity_flip(identity_bimodule(k)), "pi-k");
  regm(twisted_identity(ws.homs["eta-cl10"]), "a-eta-cl10");
  regm(parity_flip(identity_bimodule(cl10)), "pi-cl10");

  // Families for the dimension-jump scans.
  {
    FamilyBimodule<K> fam, fam_const;
    fam.params = {"id", "flip"};
    fam_const.params = fam.params;
    const Bimodule<K>& m49 = ws.bimodules["m-ex49"];
    fam.samples = {m49, twist(m49, identity_hom(l2), ws.homs["flip-exterior2"])};
    fam_const.samples = {m49, m49};
    ws.families["fam-ex49"] = fam;
    ws.families["fam-ex49-const"] = fam_const;
    FamilyBimodule<K> f5, f5n;
    f5.params = {"id", "flip"};
    f5n.params = f5.params;
    const Bimodule<K>& n5 = ws.bimodules["m-5v4-n"];
    f5.samples = {n5, twist(n5, identity_hom(km2), ws.homs["flip-m2-m2"])};
    f5n.samples = {ws.bimodules["m-5v4-m"], ws.bimodules["m-5v4-m"]};
    ws.families["fam-5v4"] = f5;
    ws.families["fam-5v4-const"] = f5n;
    FamilyBimodule<K> fid;
    fid.params = fam.params;
    fid.samples = {identity_bimodule(l2), identity_bimodule(l2)};
    ws.families["fam-id-exterior2"] = fid;
  }

  // Bundles.
  ws.algebra_bundles["bundle-cl10-circle"] =
      builtins::eta_twisted_bundle(circle_nerve(), cl10, {1, 0, 0});
  ws.algebra_bundles["bundle-trivial-mat2"] = constant_algebra_bundle(circle_nerve(), m2);
  {
    // Inner M2-bundle over the solid tetrahedron (checks the 2-cocycle
    // identity on an honest tetrahedron).
    Vec<K> ga(4, K(0)), gb(4, K(0)), gab(4, K(0)), gid(4, K(0));
    ga[1] = K(1);
    ga[2] = K(-1);  // [[0,1],[-1,0]]
    gb[0] = K(1);
    gb[3] = K(-1);  // [[1,0],[0,-1]]
    gab[0 * 2 + 0] = K(0);
    gab = m2->mul(ga, gb);
    gid = m2->unit;
    // Edges of the tetra nerve: (01),(02),(03),(12),(13),(23).
    std::vector<Vec<K>> g = {ga, m2->mul(gb, ga), ga, gb, gid, gb};
    ws.algebra_bundles["bundle-mat2-tetra"] = builtins::inner_bundle(solid_tetra_nerve(), m2, g);
    ws.algebra_bundles["bundle-mat2-sphere"] = builtins::inner_bundle(sphere_nerve(), m2, g);
  }
  {
    // Prism bundles with grading twists along two crossing cocycles whose cup
    // product is nonzero somewhere.
    std::vector<uint8_t> eps1(12, 0), eps2(12, 0);
    auto nerve = builtins::prism_nerve();
    auto set = [&](std::vector<uint8_t>& eps, size_t a, size_t b) {
      eps[nerve->edge_index(a, b)] = 1;
    };
    set(eps1, 0, 2);
    set(eps1, 0, 5);
    set(eps1, 3, 5);
    set(eps2, 0, 2);
    set(eps2, 2, 5);
    set(eps2, 1, 5);
    set(eps2, 4, 5);
    ws.algebra_bundles["bundle-cl10-prism-1"] = builtins::eta_twisted_bundle(nerve, cl10, eps1);
    ws.algebra_bundles["bundle-cl10-prism-2"] = builtins::eta_twisted_bundle(nerve, cl10, eps2);
  }

  // A Morita bimodule bundle: column modules over the trivial M2/k bundles.
  {
    BimoduleBundle<K> mb;
    mb.left = constant_algebra_bundle(circle_nerve(), m2);
    mb.right = constant_algebra_bundle(circle_nerve(), k);
    for (size_t v = 0; v < 3; ++v) mb.fiber.push_back(ws.bimodules["col-m2"]);
    for (size_t e = 0; e < 3; ++e)
      mb.transition.push_back(identity_triple(ws.bimodules["col-m2"]));
    ws.bimodule_bundles["mbundle-col-m2"] = mb;
    BimoduleBundle<K> nb;
    nb.left = mb.right;
    nb.right = mb.left;
    for (size_t v = 0; v < 3; ++v) nb.fiber.push_back(ws.bimodules["row-m2"]);
    for (size_t e = 0; e < 3; ++e)
      nb.transition.push_back(identity_triple(ws.bimodules["row-m2"]));
    ws.bimodule_bundles["mbundle-row-m2"] = nb;
  }
  return ws;
}

template <>
inline Workspace<Gaussian> builtin_workspace<Gaussian>() {
  using K = Gaussian;
  Workspace<K> ws;
  auto c = field_algebra<K>("c");
  ws.algebras["c"] = c;
  ws.algebras["ccl1"] = complex_clifford_algebra(1);
  ws.algebras["ccl2"] = complex_clifford_algebra(2);
  ws.bimodules["id-c"] = identity_bimodule(c);
  ws.bimodules["pi-c"] = parity_flip(identity_bimodule(c));
  ws.bimodules["id-ccl1"] = identity_bimodule(ws.algebras["ccl1"]);
  ws.homs["eta-ccl1"] = grading_automorphism(ws.algebras["ccl1"]);
  return ws;
}

// ---------------------------------------------------------------------------
// Catalog entries: each worked example or property suite as a runnable check
// ---------------------------------------------------------------------------

struct CatalogEntry {
  std::string id;
  std::string description;
  std::function<Report(uint64_t seed, double tol)> run;
};

namespace catalog_detail {

using K = Rational;

inline void expect(Report& rep, const std::string& name, bool ok, const std::string& witness = "") {
  rep.add(name, ok, ok ? "" : witness);
}

/// Pool of exact automorphisms of an algebra for seeded twisting.
inline std::vector<AlgebraHom<K>> automorphism_pool(const AlgebraPtr<K>& a, uint64_t seed) {
  std::vector<AlgebraHom<K>> pool;
  pool.push_back(identity_hom(a));
  AlgebraHom<K> eta = grading_automorphism(a);
  if (!(eta.matrix == Matrix<K>::identity(a->dim()))) pool.push_back(eta);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> coeff(-1, 2);
  // Inner automorphisms by seeded invertible even elements.
  for (int tries = 0; tries < 8 && pool.size() < 6; ++tries) {
    Vec<K> g = a->unit;
    for (size_t i = 0; i < a->dim(); ++i)
      if (a->space.parity[i] == 0 && (rng() & 1)) g = g + K(coeff(rng)) * unit_vec<K>(a->dim(), i);
    if (det(a->lmul(g)) == K(0)) continue;
    pool.push_back(inner_automorphism(a, g));
  }
  // Exponentials of nilpotent derivations.
  DerivationInfo<K> info = derivations_hh1(*a);
  for (const auto& d : info.der_basis) {
    if (pool.size() >= 8) break;
    if (nilpotency_index(d) == 0) continue;
    AlgebraHom<K> h{a, a, matrix_exp_nilpotent(d)};
    if (validate_hom(h).overall()) pool.push_back(std::move(h));
  }
  return pool;
}

}  // namespace catalog_detail

inline std::vector<CatalogEntry> catalog_entries() {
  using K = Rational;
  using catalog_detail::expect;
  std::vector<CatalogEntry> out;
  auto add = [&](const std::string& id, const std::string& desc,
                 std::function<Report(uint64_t, double)> fn) {
    out.push_back(CatalogEntry{id, desc, std::move(fn)});
  };

  add("ex-4.9", "fiberwise tensor dimensions jump across the twisted family",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "ex-4.9";
        Workspace<K> ws = builtin_workspace<K>();
        ScanVerdict v = family_tensor_scan(ws.families["fam-ex49"], ws.families["fam-ex49-const"]);
        auto& c = rep.add("dims [2,1]", v.dims == std::vector<long>{2, 1});
        c.dims = v.dims;
        expect(rep, "verdict JUMP", v.jump);
        ScanVerdict u =
            family_tensor_scan(ws.families["fam-ex49"], ws.families["fam-id-exterior2"]);
        expect(rep, "unitor family CONSTANT", !u.jump);
        return rep;
      });

  add("ex-5v4", "twisting the middle changes the tensor dimension from 5 to 4",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "ex-5v4";
        Workspace<K> ws = builtin_workspace<K>();
        const auto& n = ws.bimodules["m-5v4-n"];
        const auto& m = ws.bimodules["m-5v4-m"];
        RelTensor<K> plain = relative_tensor(n, m);
        RelTensor<K> twisted =
            relative_tensor(twist(n, identity_hom(n.left_alg), ws.homs["flip-m2-m2"]), m);
        auto& c = rep.add("dims 5 and 4",
                          plain.bim.dim() == 5 && twisted.bim.dim() == 4);
        c.dims = {static_cast<long>(plain.bim.dim()), static_cast<long>(twisted.bim.dim())};
        ScanVerdict v = family_tensor_scan(ws.families["fam-5v4"], ws.families["fam-5v4-const"]);
        expect(rep, "family JUMP", v.jump && v.dims == std::vector<long>{5, 4});
        return rep;
      });

  add("ex-3.6-2", "one-generator exterior module implements on both sides",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "ex-3.6-2";
        Workspace<K> ws = builtin_workspace<K>();
        ImplementingFlags f = implementing_flags(ws.bimodules["m-ex362"]);
        expect(rep, "flags (true,true)", f.left && f.right);
        ImplementingFlags g = implementing_flags(ws.bimodules["m-ex362k"]);
        expect(rep, "ground-field variant (true,true)", g.left && g.right);
        // Identity implements every scaling pair on the module.
        const auto& m = ws.bimodules["m-ex362"];
        for (const char* l : {"phi2", "phi3"})
          for (const char* r : {"phi3", "phi5"}) {
            ImplementerTriple<K> t{ws.homs[l], Matrix<K>::identity(1), ws.homs[r]};
            expect(rep, std::string("identity implements ") + l + "," + r,
                   implementer_check(m, t).overall());
          }
        return rep;
      });

  add("ex-3.6-3", "two-generator exterior counterexample implements on neither side",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "ex-3.6-3";
        Workspace<K> ws = builtin_workspace<K>();
        ImplementingFlags f = implementing_flags(ws.bimodules["m-ex363"]);
        auto& c = rep.add("flags (false,false)", !f.left && !f.right);
        c.dims = {static_cast<long>(f.left_rank), static_cast<long>(f.dim_der_left),
                  static_cast<long>(f.right_rank), static_cast<long>(f.dim_der_right)};
        // The flip derivation itself fails to lift.
        Matrix<K> rot(4, 4);
        rot(2, 1) = K(-1);
        rot(1, 2) = K(1);
        rot(0, 0) = K(0);
        Derivation<K> d{ws.algebras["exterior2"], std::move(rot)};
        expect(rep, "rotation derivation is a derivation", validate_derivation(d).overall());
        expect(rep, "rotation does not lift",
               !lift_derivation(ws.bimodules["m-ex363"], d, Side::LEFT).has_value());
        return rep;
      });

  add("ex-3.6-6", "twisted matrix bimodule with rank-jumping image is not implementing",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "ex-3.6-6";
        Workspace<K> ws = builtin_workspace<K>();
        ImplementingFlags f = implementing_flags(ws.bimodules["b-phi-366"]);
        auto& c = rep.add("not implementing", !(f.left && f.right));
        c.dims = {static_cast<long>(f.left_rank), static_cast<long>(f.dim_der_left),
                  static_cast<long>(f.right_rank), static_cast<long>(f.dim_der_right)};
        expect(rep, "left implementing, right not", f.left && !f.right);
        return rep;
      });

  add("hh1-suite", "first Hochschild cohomology of the named algebras",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "hh1-suite";
        Workspace<K> ws = builtin_workspace<K>();
        auto hh1 = [&](const std::string& nm) { return derivations_hh1(*ws.algebras[nm]).hh1_dim; };
        auto& c1 = rep.add("hh1(exterior1) = 1", hh1("exterior1") == 1);
        c1.dims = {static_cast<long>(hh1("exterior1"))};
        for (const char* nm : {"mat1", "mat2", "mat3", "mat4"})
          expect(rep, std::string("hh1(") + nm + ") = 0", hh1(nm) == 0);
        auto& c2 = rep.add("hh1(exterior2) = 4", hh1("exterior2") == 4);
        c2.dims = {static_cast<long>(hh1("exterior2"))};
        return rep;
      });

  add("structural-suite", "central simplicity and radicals of the named algebras",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "structural-suite";
        Workspace<K> ws = builtin_workspace<K>();
        for (size_t p = 0; p <= 4; ++p)
          for (size_t q = 0; p + q <= 4; ++q) {
            if (p + q < 1) continue;
            std::string nm = "cl" + std::to_string(p) + std::to_string(q);
            StructureReport<K> sr = structure_report(*ws.algebras[nm]);
            expect(rep, nm + " central simple", sr.is_central_simple);
          }
        for (size_t n = 1; n <= 4; ++n) {
          std::string nm = "exterior" + std::to_string(n);
          StructureReport<K> sr = structure_report(*ws.algebras[nm]);
          auto& c = rep.add(nm + " radical dim 2^n-1",
                            sr.radical_basis.size() == (size_t(1) << n) - 1 && !sr.is_semisimple);
          c.dims = {static_cast<long>(sr.radical_basis.size())};
        }
        StructureReport<K> sr = structure_report(*ws.algebras["k-m2"]);
        expect(rep, "k+M2 semisimple, not central simple",
               sr.is_semisimple && !sr.is_central_simple && sr.dim_even_center == 2);
        return rep;
      });

  add("invertible-implementing-suite", "every certified-invertible catalog bimodule is implementing",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "invertible-implementing-suite";
        Workspace<K> ws = builtin_workspace<K>();
        std::vector<std::string> names = {"id-k",    "id-exterior1", "id-exterior2", "id-mat2",
                                          "id-gmat11", "id-cl10",    "id-cl11",      "id-k-m2",
                                          "col-m2",  "row-m2",       "pi-k",         "a-eta-cl10",
                                          "m-5v4-m"};
        size_t invertible_count = 0;
        for (const auto& nm : names) {
          InvertibilityCertificate<K> cert = is_invertible_bimodule(ws.bimodules[nm]);
          if (!cert.invertible) {
            expect(rep, nm + " certified invertible", false, cert.reason);
            continue;
          }
          ++invertible_count;
          ImplementingFlags f = implementing_flags(ws.bimodules[nm]);
          expect(rep, nm + " invertible => implementing", f.left && f.right);
        }
        auto& c = rep.add("at least 10 instances", invertible_count >= 10);
        c.dims = {static_cast<long>(invertible_count)};
        return rep;
      });

  add("tensor-implementing-suite", "relative tensor products inherit implementing flags (seeded)",
      [](uint64_t seed, double) {
        Report rep;
        rep.subject = "tensor-implementing-suite";
        Workspace<K> ws = builtin_workspace<K>();
        struct BasePair {
          std::string m, n;
        };
        std::vector<BasePair> bases = {
            {"m-ex362", "m-ex362"}, {"m-ex362", "id-exterior1"}, {"id-exterior1", "m-ex362"},
            {"col-m2", "pi-k"},     {"col-m2", "id-k"},          {"row-m2", "col-m2"},
            {"id-mat2", "col-m2"},  {"m-5v4-n", "m-5v4-m"},      {"id-gmat11", "id-gmat11"},
            {"id-cl10", "a-eta-cl10"}};
        std::mt19937_64 rng(seed);
        std::map<const SuperAlgebra<K>*, std::vector<AlgebraHom<K>>> pools;
        auto pool_for = [&](const AlgebraPtr<K>& a) -> const std::vector<AlgebraHom<K>>& {
          auto it = pools.find(a.get());
          if (it == pools.end())
            it = pools.emplace(a.get(), catalog_detail::automorphism_pool(a, rng())).first;
          return it->second;
        };
        size_t checked = 0, failures = 0;
        for (size_t it = 0; it < 50; ++it) {
          const BasePair& bp = bases[it % bases.size()];
          Bimodule<K> m = ws.bimodules[bp.m];
          Bimodule<K> n = ws.bimodules[bp.n];
          const auto& pool_a = pool_for(m.left_alg);
          const auto& pool_c = pool_for(n.right_alg);
          m = twist(m, pool_a[rng() % pool_a.size()], identity_hom(m.right_alg));
          n = twist(n, identity_hom(n.left_alg), pool_c[rng() % pool_c.size()]);
          ImplementingFlags fm = implementing_flags(m);
          ImplementingFlags fn = implementing_flags(n);
          if (!(fm.left && fm.right && fn.left)) continue;  // hypothesis not met
          ++checked;
          RelTensor<K> r = relative_tensor(m, n);
          ImplementingFlags fr = implementing_flags(r.bim);
          if (!fr.left) ++failures;
          if (fn.right && fm.right && !fr.right) ++failures;  // symmetric side
        }
        auto& c = rep.add("50 seeded pairs, left flag inherited", failures == 0 && checked >= 50);
        c.dims = {static_cast<long>(checked), static_cast<long>(failures)};
        return rep;
      });

  add("dual-implementing-suite", "dual implementers verify and flags swap under duals",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "dual-implementing-suite";
        Workspace<K> ws = builtin_workspace<K>();
        // Triples on catalog bimodules.
        {
          const Bimodule<K>& m = ws.bimodules["id-mat2"];
          DualBimodule<K> d = dual(m);
          for (const char* hn : {"inner-mat2"}) {
            const AlgebraHom<K>& h = ws.homs[hn];
            // (i(g), L_g-style u, id) implements on the identity bimodule.
            Vec<K> g = h.apply(ws.algebras["mat2"]->unit);
            (void)g;
            ImplementerTriple<K> t{h, h.matrix, h};
            expect(rep, std::string("triple (") + hn + ") on id-mat2",
                   implementer_check(m, t).overall());
            ImplementerTriple<K> td = dual_implementer(m, d, t);
            expect(rep, std::string("dual triple (") + hn + ")",
                   implementer_check(d.bim, td).overall());
          }
        }
        {
          const Bimodule<K>& m = ws.bimodules["m-ex362"];
          DualBimodule<K> d = dual(m);
          ImplementerTriple<K> t{ws.homs["phi2"], Matrix<K>::identity(1), ws.homs["phi5"]};
          expect(rep, "scaling triple on m-ex362", implementer_check(m, t).overall());
          ImplementerTriple<K> td = dual_implementer(m, d, t);
          expect(rep, "dual of scaling triple", implementer_check(d.bim, td).overall());
        }
        for (const char* nm :
             {"id-k", "id-exterior1", "m-ex362", "m-ex363", "col-m2", "row-m2", "id-gmat11"}) {
          const Bimodule<K>& m = ws.bimodules[nm];
          ImplementingFlags f = implementing_flags(m);
          ImplementingFlags fd = implementing_flags(dual(m).bim);
          expect(rep, std::string("flag swap for ") + nm,
                 f.left == fd.right && f.right == fd.left);
        }
        return rep;
      });

  add("flip-compositor-suite", "parity-flip tensor isomorphisms and compositors",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "flip-compositor-suite";
        Workspace<K> ws = builtin_workspace<K>();
        struct Pair {
          std::string m, n;
        };
        for (const Pair& p : std::vector<Pair>{{"id-k", "id-k"},
                                               {"id-exterior1", "id-exterior1"},
                                               {"m-ex362", "m-ex362"},
                                               {"id-exterior1", "m-ex362"},
                                               {"m-ex363", "id-exterior2"},
                                               {"col-m2", "id-k"},
                                               {"row-m2", "col-m2"},
                                               {"m-5v4-n", "m-5v4-m"}}) {
          bool ok = true;
          std::string witness;
          try {
            pi_isos(ws.bimodules[p.m], ws.bimodules[p.n]);
          } catch (const Error& e) {
            ok = false;
            witness = e.what();
          }
          expect(rep, "flip isos " + p.m + " (x) " + p.n, ok, witness);
        }
        // Compositors, including non-invertible homomorphisms.
        auto try_compositor = [&](const AlgebraHom<K>& phi, const AlgebraHom<K>& psi,
                                  const Bimodule<K>& m, const std::string& label) {
          bool ok = true;
          std::string witness;
          try {
            compositor(phi, psi, m);
          } catch (const Error& e) {
            ok = false;
            witness = e.what();
          }
          expect(rep, "compositor " + label, ok, witness);
        };
        try_compositor(identity_hom(ws.algebras["mat2"]), identity_hom(ws.algebras["mat2"]),
                       ws.bimodules["id-mat2"], "identity/mat2");
        try_compositor(ws.homs["inner-mat2"], ws.homs["inner-mat2"], ws.bimodules["id-mat2"],
                       "inner/mat2");
        try_compositor(ws.homs["phi2"], ws.homs["phi3"], ws.bimodules["id-exterior1"],
                       "scalings/exterior1");
        try_compositor(ws.homs["phi2"], ws.homs["phi3"], ws.bimodules["m-ex362"],
                       "scalings/m-ex362");
        try_compositor(ws.homs["proj-kk-k"], identity_hom(ws.algebras["k"]), ws.bimodules["id-k"],
                       "projection/kk");
        // Coherence squares.
        auto coh = [&](const AlgebraHom<K>& a, const AlgebraHom<K>& b, const AlgebraHom<K>& c,
                       const std::string& label) {
          Report r = compositor_coherence(a, b, c);
          expect(rep, "coherence " + label, r.overall(),
                 r.first_failure() ? r.first_failure()->name : "");
        };
        coh(ws.homs["phi2"], ws.homs["phi3"], ws.homs["phi5"], "scalings");
        coh(ws.homs["inner-mat2"], ws.homs["inner-mat2"], ws.homs["inner-mat2"], "inner");
        coh(ws.homs["proj-kk-k"], identity_hom(ws.algebras["k"]),
            identity_hom(ws.algebras["k"]), "projection");
        // Twisted-identity Hom dimensions match an independent commutant solve.
        {
          auto m2 = ws.algebras["mat2"];
          Bimodule<K> bphi = twisted_identity(identity_hom(m2));
          Bimodule<K> bpsi = twisted_identity(ws.homs["inner-mat2"]);
          auto [ev, od] = intertwiner_space(bphi, bpsi);
          // Independent count: even b with phi(a) b = b psi(a).
          std::vector<Vec<K>> rows;
          for (size_t g = 0; g < 4; ++g) {
            Matrix<K> op =
                m2->lmul(unit_vec<K>(4, g)) - m2->rmul(ws.homs["inner-mat2"].apply_basis(g));
            for (size_t r = 0; r < 4; ++r) rows.push_back(op.row(r));
          }
          size_t indep = kernel_basis(rows_matrix(rows, 4)).size();
          auto& c = rep.add("Hom(B_phi,B_psi) even dim matches commutant", ev.size() == indep);
          c.dims = {static_cast<long>(ev.size()), static_cast<long>(indep)};
          expect(rep, "odd part trivial for purely even algebra", od.empty());
        }
        return rep;
      });

  add("cech-dk-suite", "descent invariants of the grading-twisted Clifford bundles",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "cech-dk-suite";
        Workspace<K> ws = builtin_workspace<K>();
        const auto& bundle = ws.algebra_bundles["bundle-cl10-circle"];
        DKData<K> dk = dk_invariants(bundle);
        expect(rep, "eps = (1,0,0)", dk.eps == std::vector<uint8_t>{1, 0, 0});
        expect(rep, "eps nontrivial around the circle",
               (dk.eps[0] + dk.eps[1] + dk.eps[2]) % 2 == 1);
        expect(rep, "x trivial (no triangles)", dk.x.empty());
        expect(rep, "cocycle identities", dk_cocycle_report(dk).overall());
        // Combine two copies and compare against the fiberwise tensor bundle.
        DKData<K> combined = bw_combine(dk, dk);
        AlgebraBundle<K> tensor = tensor_algebra_bundle(bundle, bundle);
        DKData<K> dk_tensor = dk_invariants(tensor);
        expect(rep, "eps adds", combined.eps == dk_tensor.eps);
        expect(rep, "x classes agree up to coboundary",
               coboundary_solve(*bundle.nerve, dk_tensor.x, combined.x).has_value());
        // Prism bundles: nonvacuous cup-product sign.
        const auto& p1 = ws.algebra_bundles["bundle-cl10-prism-1"];
        const auto& p2 = ws.algebra_bundles["bundle-cl10-prism-2"];
        DKData<K> d1 = dk_invariants(p1), d2 = dk_invariants(p2);
        expect(rep, "prism cocycles", dk_cocycle_report(d1).overall() &&
                                          dk_cocycle_report(d2).overall());
        std::vector<uint8_t> cup = cup_product_z2(*p1.nerve, d1.eps, d2.eps);
        bool cup_nonzero = false;
        for (uint8_t c : cup) cup_nonzero |= c;
        expect(rep, "cup product nonzero somewhere", cup_nonzero);
        DKData<K> comb = bw_combine(d1, d2);
        DKData<K> dk_t = dk_invariants(tensor_algebra_bundle(p1, p2));
        expect(rep, "prism eps adds", comb.eps == dk_t.eps);
        expect(rep, "prism x classes agree up to coboundary",
               coboundary_solve(*p1.nerve, dk_t.x, comb.x).has_value());
        return rep;
      });

  add("replacement-suite", "multiplicity-free replacements with certified equivalences",
      [](uint64_t seed, double) {
        Report rep;
        rep.subject = "replacement-suite";
        Workspace<K> ws = builtin_workspace<K>();
        PicardReplacement<K> pr = picard_replacement(ws.algebras["k-m2"], seed);
        expect(rep, "k+M2 splits", pr.outcome == SplitOutcome::SPLIT);
        auto& c = rep.add("E has dimension 2",
                          pr.endo_opposite && pr.endo_opposite->dim() == 2);
        if (pr.endo_opposite) c.dims = {static_cast<long>(pr.endo_opposite->dim())};
        rep.merge(pr.report, "k+M2");
        PicardReplacement<K> pr2 = picard_replacement(ws.algebras["mat2"], seed);
        expect(rep, "M2 gives E = k",
               pr2.outcome == SplitOutcome::SPLIT && pr2.endo_opposite->dim() == 1);
        rep.merge(pr2.report, "M2");
        ProjectiveDecomposition<K> dm2 = primitive_idempotents(ws.algebras["mat2"], seed);
        expect(rep, "M2 has two primitives in one class",
               dm2.outcome == SplitOutcome::SPLIT && dm2.idempotents.size() == 2 &&
                   dm2.grouping.size() == 1);
        ProjectiveDecomposition<K> dkm2 = primitive_idempotents(ws.algebras["k-m2"], seed);
        expect(rep, "k+M2 has three primitives in two classes",
               dkm2.outcome == SplitOutcome::SPLIT && dkm2.idempotents.size() == 3 &&
                   dkm2.grouping.size() == 2);
        ProjectiveDecomposition<K> dl1 = primitive_idempotents(ws.algebras["exterior1"], seed);
        expect(rep, "local algebra has a single primitive",
               dl1.outcome == SplitOutcome::SPLIT && dl1.idempotents.size() == 1);
        return rep;
      });

  add("crossed-module-suite", "Lie-level crossed-module axioms and dimension audit",
      [](uint64_t seed, double) {
        Report rep;
        rep.subject = "crossed-module-suite";
        Workspace<K> ws = builtin_workspace<K>();
        for (const char* nm : {"k", "exterior1", "exterior2", "mat2", "gmat11", "cl10", "cl11",
                               "k-m2", "kk"}) {
          Report r = crossed_module_check(ws.algebras[nm], seed);
          expect(rep, std::string("crossed module ") + nm, r.overall(),
                 r.first_failure() ? r.first_failure()->name : "");
        }
        Report tp = tensor_picard_check(ws.algebras["cl10"], ws.algebras["cl10"]);
        expect(rep, "tensor picard cl10 (x) cl10", tp.overall());
        Report tp2 = tensor_picard_check(ws.algebras["mat2"], ws.algebras["cl10"]);
        expect(rep, "tensor picard mat2 (x) cl10", tp2.overall());
        bool no_witness = false;
        try {
          tensor_picard_check(ws.algebras["mat2"], ws.algebras["k"]);
        } catch (const Error& e) {
          no_witness = std::string(e.code()) == "NO_WITNESS";
        }
        expect(rep, "ground field has no flip witness", no_witness);
        return rep;
      });

  add("picard-gauss-suite", "complex ground field examples (Gaussian rationals)",
      [](uint64_t, double) {
        Report rep;
        rep.subject = "picard-gauss-suite";
        Workspace<Gaussian> ws = builtin_workspace<Gaussian>();
        auto [ev, od] = intertwiner_space(ws.bimodules["pi-c"], ws.bimodules["id-c"]);
        expect(rep, "Hom(Pi C, C): even 0, odd 1", ev.empty() && od.size() == 1);
        InvertibleSearch<Gaussian> s =
            find_invertible_intertwiner(ws.bimodules["pi-c"], ws.bimodules["id-c"]);
        expect(rep, "no even invertible intertwiner",
               !s.found && s.reason == NoInvertibleReason::ZERO_EVEN_HOM);
        // CCl1 does have the witness.
        Bimodule<Gaussian> pi_ccl1 = parity_flip(ws.bimodules["id-ccl1"]);
        Bimodule<Gaussian> tw = twisted_identity(ws.homs["eta-ccl1"]);
        InvertibleSearch<Gaussian> s2 = find_invertible_intertwiner(pi_ccl1, tw);
        expect(rep, "Pi CCl1 ~ (CCl1)_eta", s2.found.has_value());
        return rep;
      });

  add("negative-suite", "seeded fault injection: every broken object is rejected",
      [](uint64_t seed, double) {
        Report rep;
        rep.subject = "negative-suite";
        Workspace<K> ws = builtin_workspace<K>();
        std::mt19937_64 rng(seed);
        size_t caught = 0, injected = 0;
        // (a) grading faults: bump a structure constant at a parity-violating
        // slot (graded algebras only; such a slot always invalidates).
        std::vector<std::string> graded_names = {"exterior2", "cl11", "gmat11"};
        for (size_t it = 0; it < 25; ++it) {
          const auto& src = *ws.algebras[graded_names[rng() % graded_names.size()]];
          SuperAlgebra<K> broken = src;
          size_t n = broken.dim();
          size_t i, j, kk2;
          do {
            i = rng() % n;
            j = rng() % n;
            kk2 = rng() % n;
          } while (((broken.space.parity[i] + broken.space.parity[j]) & 1) ==
                   broken.space.parity[kk2]);
          broken.c(i, j, kk2) += K(1);
          ++injected;
          Report r = validate_algebra(broken);
          if (!r.overall() && r.first_failure() && !r.first_failure()->witness.empty()) ++caught;
        }
        // (a') structure faults at parity-legal slots, resampled until the
        // perturbation genuinely invalidates the algebra.
        std::vector<std::string> alg_names = {"exterior2", "mat2", "cl11", "gmat11", "k-m2"};
        for (size_t it = 0; it < 15; ++it) {
          const auto& src = *ws.algebras[alg_names[rng() % alg_names.size()]];
          SuperAlgebra<K> broken = src;
          size_t n = broken.dim();
          bool is_broken = false;
          for (int tries = 0; tries < 60 && !is_broken; ++tries) {
            SuperAlgebra<K> cand = src;
            cand.c(rng() % n, rng() % n, rng() % n) += K(1 + static_cast<long>(rng() % 2));
            if (!validate_algebra(cand).overall()) {
              broken = cand;
              is_broken = true;
            }
          }
          if (!is_broken) continue;
          ++injected;
          Report r = validate_algebra(broken);
          if (!r.overall() && r.first_failure() && !r.first_failure()->witness.empty()) ++caught;
        }
        // (b) bimodule action faults (resampled until genuinely broken).
        std::vector<std::string> bim_names = {"m-ex362", "col-m2", "m-ex363", "id-mat2"};
        for (size_t it = 0; it < 20; ++it) {
          Bimodule<K> broken = ws.bimodules[bim_names[rng() % bim_names.size()]];
          bool is_broken = false;
          for (int tries = 0; tries < 50 && !is_broken; ++tries) {
            Bimodule<K> cand = broken;
            auto& act = (rng() & 1) ? cand.left : cand.right;
            Matrix<K>& mtx = act[rng() % act.size()];
            mtx(rng() % cand.dim(), rng() % cand.dim()) += K(1 + static_cast<long>(rng() % 3));
            if (!validate_bimodule(cand).overall()) {
              broken = cand;
              is_broken = true;
            }
          }
          if (!is_broken) continue;
          ++injected;
          Report r = validate_bimodule(broken);
          if (!r.overall() && r.first_failure() && !r.first_failure()->witness.empty()) ++caught;
        }
        // (c) bundle cocycle faults on the sphere bundle.
        for (size_t it = 0; it < 20; ++it) {
          AlgebraBundle<K> broken = ws.algebra_bundles["bundle-mat2-sphere"];
          size_t e = rng() % broken.transition.size();
          AlgebraHom<K> tweak = ws.homs["inner-mat2"];
          Matrix<K> replaced = tweak.matrix * broken.transition[e].matrix;
          if (replaced == broken.transition[e].matrix) continue;
          broken.transition[e].matrix = replaced;
          ++injected;
          Report r = validate_algebra_bundle(broken);
          if (!r.overall() && r.first_failure() && !r.first_failure()->witness.empty()) ++caught;
        }
        // (d) implementer faults in a bimodule bundle.
        for (size_t it = 0; it < 20; ++it) {
          BimoduleBundle<K> broken = ws.bimodule_bundles["mbundle-col-m2"];
          size_t e = rng() % broken.transition.size();
          Matrix<K>& u = broken.transition[e].u;
          bool is_broken = false;
          for (int tries = 0; tries < 50 && !is_broken; ++tries) {
            Matrix<K> cand = u;
            cand(rng() % cand.rows(), rng() % cand.cols()) += K(1);
            broken.transition[e].u = cand;
            if (!validate_bimodule_bundle(broken).overall()) is_broken = true;
          }
          if (!is_broken) continue;
          ++injected;
          Report r = validate_bimodule_bundle(broken);
          if (!r.overall() && r.first_failure() && !r.first_failure()->witness.empty()) ++caught;
        }
        auto& c = rep.add("every injected fault rejected with witness",
                          injected >= 100 && caught == injected);
        c.dims = {static_cast<long>(injected), static_cast<long>(caught)};
        return rep;
      });

  return out;
}

}  // namespace superbim
