#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "superbim/implement.hpp"

namespace superbim {

/// Finite ordered simplicial nerve: the combinatorics of an open cover.
struct Nerve {
  size_t n_vertices = 0;
  std::vector<std::array<size_t, 2>> edges;
  std::vector<std::array<size_t, 3>> triangles;
  std::vector<std::array<size_t, 4>> tetrahedra;

  long edge_index(size_t a, size_t b) const {
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i][0] == a && edges[i][1] == b) return static_cast<long>(i);
    return -1;
  }
  long triangle_index(size_t a, size_t b, size_t c) const {
    for (size_t i = 0; i < triangles.size(); ++i)
      if (triangles[i][0] == a && triangles[i][1] == b && triangles[i][2] == c)
        return static_cast<long>(i);
    return -1;
  }

  Report validate() const {
    Report rep;
    rep.subject = "nerve";
    bool ordered = true, in_range = true, faces = true;
    for (const auto& e : edges) {
      ordered &= e[0] < e[1];
      in_range &= e[1] < n_vertices;
    }
    for (const auto& t : triangles) {
      ordered &= t[0] < t[1] && t[1] < t[2];
      in_range &= t[2] < n_vertices;
      faces &= edge_index(t[0], t[1]) >= 0 && edge_index(t[1], t[2]) >= 0 &&
               edge_index(t[0], t[2]) >= 0;
    }
    for (const auto& s : tetrahedra) {
      ordered &= s[0] < s[1] && s[1] < s[2] && s[2] < s[3];
      in_range &= s[3] < n_vertices;
      faces &= triangle_index(s[0], s[1], s[2]) >= 0 && triangle_index(s[0], s[1], s[3]) >= 0 &&
               triangle_index(s[0], s[2], s[3]) >= 0 && triangle_index(s[1], s[2], s[3]) >= 0;
    }
    rep.add("ORDERED", ordered);
    rep.add("IN_RANGE", in_range);
    rep.add("FACES_PRESENT", faces);
    return rep;
  }

  /// Connected component id per vertex, via the edge graph.
  std::vector<size_t> components() const {
    std::vector<size_t> comp(n_vertices);
    for (size_t i = 0; i < n_vertices; ++i) comp[i] = i;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& e : edges) {
        size_t c = std::min(comp[e[0]], comp[e[1]]);
        if (comp[e[0]] != c || comp[e[1]] != c) {
          comp[e[0]] = comp[e[1]] = c;
          changed = true;
        }
      }
    }
    return comp;
  }

  bool operator==(const Nerve& o) const {
    return n_vertices == o.n_vertices && edges == o.edges && triangles == o.triangles &&
           tetrahedra == o.tetrahedra;
  }
};

inline std::shared_ptr<const Nerve> circle_nerve() {
  Nerve n;
  n.n_vertices = 3;
  n.edges = {{0, 1}, {0, 2}, {1, 2}};
  return std::make_shared<const Nerve>(std::move(n));
}

/// Full 3-simplex: the smallest nerve with a tetrahedron.
inline std::shared_ptr<const Nerve> solid_tetra_nerve() {
  Nerve n;
  n.n_vertices = 4;
  n.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  n.triangles = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  n.tetrahedra = {{0, 1, 2, 3}};
  return std::make_shared<const Nerve>(std::move(n));
}

/// Boundary of the 3-simplex: a 2-sphere-like nerve (no solid tetrahedron).
inline std::shared_ptr<const Nerve> sphere_nerve() {
  Nerve n = *solid_tetra_nerve();
  n.tetrahedra.clear();
  return std::make_shared<const Nerve>(std::move(n));
}

// ---------------------------------------------------------------------------
// Bundles as descent data
// ---------------------------------------------------------------------------

template <class K>
struct AlgebraBundle {
  std::shared_ptr<const Nerve> nerve;
  std::vector<AlgebraPtr<K>> fiber;        // per vertex
  std::vector<AlgebraHom<K>> transition;   // per edge (alpha -> beta)
};

template <class K>
Report validate_algebra_bundle(const AlgebraBundle<K>& d) {
  Report rep;
  rep.subject = "algebra bundle";
  rep.merge(d.nerve->validate(), "nerve");
  bool shapes = d.fiber.size() == d.nerve->n_vertices && d.transition.size() == d.nerve->edges.size();
  rep.add("SHAPE", shapes);
  if (!shapes) return rep;
  bool homs = true, invertible = true;
  std::string hw;
  for (size_t e = 0; e < d.transition.size(); ++e) {
    const auto& t = d.transition[e];
    if (!same_algebra(t.source, d.fiber[d.nerve->edges[e][0]]) ||
        !same_algebra(t.target, d.fiber[d.nerve->edges[e][1]]) || !validate_hom(t).overall()) {
      homs = false;
      hw = "edge " + std::to_string(e);
      break;
    }
    if (!inverse(t.matrix)) {
      invertible = false;
      hw = "edge " + std::to_string(e);
      break;
    }
  }
  rep.add("TRANSITIONS", homs && invertible, hw);
  bool cocycle = true;
  std::string cw;
  for (const auto& t : d.nerve->triangles) {
    const auto& f01 = d.transition[d.nerve->edge_index(t[0], t[1])];
    const auto& f12 = d.transition[d.nerve->edge_index(t[1], t[2])];
    const auto& f02 = d.transition[d.nerve->edge_index(t[0], t[2])];
    if (f12.matrix * f01.matrix != f02.matrix) {
      cocycle = false;
      cw = "COCYCLE fails on triangle (" + std::to_string(t[0]) + "," + std::to_string(t[1]) +
           "," + std::to_string(t[2]) + ")";
      break;
    }
  }
  rep.add("COCYCLE", cocycle, cw);
  return rep;
}

template <class K>
AlgebraBundle<K> constant_algebra_bundle(std::shared_ptr<const Nerve> nerve,
                                         const AlgebraPtr<K>& a) {
  AlgebraBundle<K> d;
  d.nerve = std::move(nerve);
  d.fiber.assign(d.nerve->n_vertices, a);
  for (size_t e = 0; e < d.nerve->edges.size(); ++e) d.transition.push_back(identity_hom(a));
  return d;
}

/// Fiberwise graded tensor product of two algebra bundles over one nerve.
template <class K>
AlgebraBundle<K> tensor_algebra_bundle(const AlgebraBundle<K>& x, const AlgebraBundle<K>& y) {
  if (!(*x.nerve == *y.nerve)) throw Error("TYPE", "bundles over different nerves");
  AlgebraBundle<K> d;
  d.nerve = x.nerve;
  for (size_t v = 0; v < x.fiber.size(); ++v)
    d.fiber.push_back(graded_tensor(x.fiber[v], y.fiber[v]));
  for (size_t e = 0; e < x.transition.size(); ++e) {
    const auto& a = x.transition[e];
    const auto& b = y.transition[e];
    d.transition.push_back(AlgebraHom<K>{d.fiber[x.nerve->edges[e][0]],
                                         d.fiber[x.nerve->edges[e][1]],
                                         kronecker(a.matrix, b.matrix)});
  }
  return d;
}

template <class K>
struct BimoduleBundle {
  AlgebraBundle<K> left, right;            // over the same nerve
  std::vector<Bimodule<K>> fiber;          // per vertex
  std::vector<ImplementerTriple<K>> transition;  // per edge
};

template <class K>
Report validate_bimodule_bundle(const BimoduleBundle<K>& d) {
  Report rep;
  rep.subject = "bimodule bundle";
  Report ra = validate_algebra_bundle(d.left);
  Report rb = validate_algebra_bundle(d.right);
  rep.add("LEFT_ALGEBRA_BUNDLE", ra.overall(),
          ra.first_failure() ? ra.first_failure()->witness : "");
  rep.add("RIGHT_ALGEBRA_BUNDLE", rb.overall(),
          rb.first_failure() ? rb.first_failure()->witness : "");
  const auto& nerve = *d.left.nerve;
  bool shapes = d.fiber.size() == nerve.n_vertices && d.transition.size() == nerve.edges.size() &&
                *d.left.nerve == *d.right.nerve;
  rep.add("SHAPE", shapes);
  if (!shapes || !ra.overall() || !rb.overall()) return rep;

  bool fibers_ok = true;
  std::string fw;
  for (size_t v = 0; v < d.fiber.size(); ++v) {
    Report r = validate_bimodule(d.fiber[v]);
    if (!r.overall() || !same_algebra(d.fiber[v].left_alg, d.left.fiber[v]) ||
        !same_algebra(d.fiber[v].right_alg, d.right.fiber[v])) {
      fibers_ok = false;
      fw = "vertex " + std::to_string(v);
      break;
    }
  }
  rep.add("FIBERS", fibers_ok, fw);
  if (!fibers_ok) return rep;

  bool trans_ok = true;
  std::string tw;
  for (size_t e = 0; e < d.transition.size(); ++e) {
    const auto& t = d.transition[e];
    size_t va = nerve.edges[e][0], vb = nerve.edges[e][1];
    if (t.phi.matrix != d.left.transition[e].matrix ||
        t.psi.matrix != d.right.transition[e].matrix) {
      trans_ok = false;
      tw = "IMPLEMENTER transition differs from the algebra transitions at edge " +
           std::to_string(e);
      break;
    }
    Report r = implementer_check(d.fiber[va], d.fiber[vb], t);
    if (!r.overall()) {
      trans_ok = false;
      tw = "IMPLEMENTER fails at edge " + std::to_string(e) + ": " +
           (r.first_failure() ? r.first_failure()->witness : "");
      break;
    }
  }
  rep.add("TRANSITIONS", trans_ok, tw);

  bool cocycle = true;
  std::string cw;
  for (const auto& t : nerve.triangles) {
    const auto& u01 = d.transition[nerve.edge_index(t[0], t[1])];
    const auto& u12 = d.transition[nerve.edge_index(t[1], t[2])];
    const auto& u02 = d.transition[nerve.edge_index(t[0], t[2])];
    if (u12.u * u01.u != u02.u) {
      cocycle = false;
      cw = "COCYCLE fails on triangle (" + std::to_string(t[0]) + "," + std::to_string(t[1]) +
           "," + std::to_string(t[2]) + ")";
      break;
    }
  }
  rep.add("COCYCLE", cocycle, cw);
  return rep;
}

/// Relative tensor product of bimodule bundles over a shared middle algebra
/// bundle. Requires every fiber of both factors to be implementing; the
/// output has constant fiber dimension on each connected component.
template <class K>
BimoduleBundle<K> cech_tensor(const BimoduleBundle<K>& m, const BimoduleBundle<K>& n) {
  const auto& nerve = *m.left.nerve;
  if (!(*m.right.nerve == *n.left.nerve)) throw Error("TYPE", "bundles over different nerves");
  for (size_t e = 0; e < m.right.transition.size(); ++e)
    if (m.right.transition[e].matrix != n.left.transition[e].matrix)
      throw Error("MIDDLE_MISMATCH", "middle algebra bundles differ at edge " + std::to_string(e));
  for (size_t v = 0; v < m.fiber.size(); ++v) {
    ImplementingFlags fm = implementing_flags(m.fiber[v]);
    ImplementingFlags fn = implementing_flags(n.fiber[v]);
    if (!fm.left || !fm.right || !fn.left || !fn.right)
      throw Error("NOT_IMPLEMENTING", "fiber at vertex " + std::to_string(v));
  }
  BimoduleBundle<K> out;
  out.left = m.left;
  out.right = n.right;
  std::vector<RelTensor<K>> rel;
  for (size_t v = 0; v < m.fiber.size(); ++v) {
    rel.push_back(relative_tensor(m.fiber[v], n.fiber[v]));
    out.fiber.push_back(rel.back().bim);
  }
  for (size_t e = 0; e < nerve.edges.size(); ++e) {
    size_t va = nerve.edges[e][0], vb = nerve.edges[e][1];
    const auto& s = m.transition[e];
    const auto& t = n.transition[e];
    if (s.psi.matrix != t.phi.matrix) throw Error("MIDDLE_MISMATCH", "edge " + std::to_string(e));
    auto w = descend_map(rel[va].pres, rel[vb].pres, kronecker(s.u, t.u));
    if (!w) throw Error("INTERNAL", "edge tensor implementer does not descend");
    ImplementerTriple<K> tri{s.phi, std::move(*w), t.psi};
    Report r = implementer_check(rel[va].bim, rel[vb].bim, tri);
    if (!r.overall()) throw Error("INTERNAL", "edge tensor implementer fails the identity");
    out.transition.push_back(std::move(tri));
  }
  // Fiber dimensions agree on connected components (transitions are bijections).
  auto comp = nerve.components();
  std::map<size_t, size_t> comp_dim;
  for (size_t v = 0; v < out.fiber.size(); ++v) {
    auto [it, fresh] = comp_dim.emplace(comp[v], out.fiber[v].dim());
    if (!fresh && it->second != out.fiber[v].dim())
      throw Error("INTERNAL", "fiber dimension jumps inside a connected component");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite sample families
// ---------------------------------------------------------------------------

/// Finitely sampled family of bimodules (one carrier, per-sample actions).
template <class K>
struct FamilyBimodule {
  std::vector<std::string> params;
  std::vector<Bimodule<K>> samples;
};

struct ScanVerdict {
  std::vector<long> dims;
  bool jump = false;
  size_t witness_a = 0, witness_b = 0;  // adjacent samples with differing dims
};

template <class K>
ScanVerdict family_tensor_scan(const FamilyBimodule<K>& m, const FamilyBimodule<K>& n) {
  if (m.samples.size() != n.samples.size()) throw Error("TYPE", "families of different length");
  ScanVerdict out;
  for (size_t i = 0; i < m.samples.size(); ++i) {
    RelTensor<K> r = relative_tensor(m.samples[i], n.samples[i]);
    out.dims.push_back(static_cast<long>(r.bim.dim()));
  }
  for (size_t i = 0; i + 1 < out.dims.size(); ++i)
    if (out.dims[i] != out.dims[i + 1]) {
      out.jump = true;
      out.witness_a = i;
      out.witness_b = i + 1;
      break;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Path lifting
// ---------------------------------------------------------------------------

/// Path in the identity component of the right/left automorphism group, given
/// as successive exponential increments of derivations.
template <class K>
struct PathIncrement {
  Derivation<K> derivation;
  K t;
};

/// Lifts a product-of-exponentials path through the implementer projection,
/// one increment at a time; all increments must be nilpotent (exact mode).
template <class K>
std::vector<ImplementerTriple<K>> path_lift(const Bimodule<K>& n,
                                            const std::vector<PathIncrement<K>>& path, Side side) {
  ImplementingFlags flags = implementing_flags(n);
  if ((side == Side::LEFT && !flags.left) || (side == Side::RIGHT && !flags.right))
    throw Error("NOT_IMPLEMENTING", "module does not lift the requested side");
  std::vector<ImplementerTriple<K>> out;
  ImplementerTriple<K> acc = identity_triple(n);
  out.push_back(acc);
  for (const auto& inc : path) {
    auto lift = lift_derivation(n, inc.derivation, side);
    if (!lift) throw Error("NOT_IMPLEMENTING", "path increment fails to lift");
    ImplementerTriple<K> step = exponentiate_lift(n, *lift, inc.t);
    acc = compose_triples(step, acc);
    Report rep = implementer_check(n, acc);
    if (!rep.overall()) throw Error("INTERNAL", "accumulated lift fails the identity");
    out.push_back(acc);
  }
  return out;
}

/// Numeric variant for non-nilpotent increments.
template <class K>
std::vector<NumericTriple> path_lift_numeric(const Bimodule<K>& n,
                                             const std::vector<PathIncrement<K>>& path, Side side,
                                             double tol = 1e-9) {
  ImplementingFlags flags = implementing_flags(n);
  if ((side == Side::LEFT && !flags.left) || (side == Side::RIGHT && !flags.right))
    throw Error("NOT_IMPLEMENTING", "module does not lift the requested side");
  std::vector<NumericTriple> out;
  size_t dmn = n.dim();
  NumericTriple acc{Matrix<double>::identity(n.left_alg->dim()), Matrix<double>::identity(dmn),
                    Matrix<double>::identity(n.right_alg->dim())};
  out.push_back(acc);
  for (const auto& inc : path) {
    auto lift = lift_derivation(n, inc.derivation, side);
    if (!lift) throw Error("NOT_IMPLEMENTING", "path increment fails to lift");
    NumericTriple step = exponentiate_lift_numeric(n, *lift, FieldOps<K>::to_real(inc.t), tol);
    acc = NumericTriple{step.phi * acc.phi, step.u * acc.u, step.psi * acc.psi};
    if (numeric_implementer_residual(n, acc) > tol)
      throw Error("TOLERANCE", "accumulated numeric lift exceeds tolerance");
    out.push_back(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation witness
// ---------------------------------------------------------------------------

template <class K>
struct ConjugationWitness {
  std::optional<Vec<K>> b;
  Report report;
};

/// Solves phi1(a) b = b phi0(a) over even b and searches the solution space
/// for an invertible element. Complete for semisimple algebras; otherwise the
/// report is tagged ADVISORY.
template <class K>
ConjugationWitness<K> conjugation_witness(const AlgebraPtr<K>& a, const AlgebraPtr<K>& b,
                                          const AlgebraHom<K>& phi0, const AlgebraHom<K>& phi1) {
  ConjugationWitness<K> out;
  out.report.subject = "conjugation witness";
  bool ss = is_semisimple(*a) && is_semisimple(*b);
  out.report.add(ss ? "SEMISIMPLE" : "ADVISORY_NOT_SEMISIMPLE", ss,
                 ss ? "" : "completeness only guaranteed for semisimple inputs");
  const size_t db = b->dim();
  // Unknown b restricted to even coordinates.
  std::vector<size_t> keep;
  for (size_t i = 0; i < db; ++i)
    if (b->space.parity[i] == 0) keep.push_back(i);
  std::vector<Vec<K>> rows;
  for (size_t g = 0; g < a->dim(); ++g) {
    Matrix<K> op = b->lmul(phi1.apply_basis(g)) - b->rmul(phi0.apply_basis(g));
    for (size_t r = 0; r < db; ++r) {
      Vec<K> row(keep.size(), K(0));
      bool nz = false;
      for (size_t t = 0; t < keep.size(); ++t)
        if (!(op(r, keep[t]) == K(0))) {
          row[t] = op(r, keep[t]);
          nz = true;
        }
      if (nz) rows.push_back(std::move(row));
    }
  }
  std::vector<Vec<K>> sols = kernel_basis(rows_matrix(rows, keep.size()));
  std::vector<Vec<K>> full;
  for (const auto& s : sols) {
    Vec<K> v(db, K(0));
    for (size_t t = 0; t < keep.size(); ++t) v[keep[t]] = s[t];
    full.push_back(std::move(v));
  }
  out.report.add("SOLUTION_SPACE_DIM", true).dims.push_back(static_cast<long>(full.size()));
  if (full.empty()) {
    out.report.add("INVERTIBLE_ELEMENT", false, "intertwining space is zero");
    return out;
  }
  // Structural pre-certificate: an invertible solution generates the whole
  // algebra as a one-sided ideal, so a proper span of B*S (or S*B) rules one
  // out by an exact rank computation.
  {
    RowSpan<K> left_ideal(db), right_ideal(db);
    for (const auto& s : full)
      for (size_t g = 0; g < db; ++g) {
        left_ideal.insert(b->mul(unit_vec<K>(db, g), s));
        right_ideal.insert(b->mul(s, unit_vec<K>(db, g)));
      }
    if (left_ideal.rank() < db || right_ideal.rank() < db) {
      out.report.add("INVERTIBLE_ELEMENT", false,
                     "every solution generates a proper one-sided ideal");
      return out;
    }
  }
  // Deterministic search for an invertible element, as in the
  // invertible-intertwiner certificate.
  const size_t d = full.size(), deg = db;
  auto eval = [&](const std::vector<long>& coeff) -> std::optional<Vec<K>> {
    Vec<K> v(db, K(0));
    for (size_t i = 0; i < d; ++i)
      if (coeff[i] != 0) v = v + K(coeff[i]) * full[i];
    if (det(b->lmul(v)) == K(0)) return std::nullopt;
    return v;
  };
  for (size_t i = 0; i < d && !out.b; ++i) {
    std::vector<long> c(d, 0);
    c[i] = 1;
    if (auto v = eval(c)) out.b = std::move(*v);
  }
  for (size_t i = 0; i < d && !out.b; ++i)
    for (size_t j = i + 1; j < d && !out.b; ++j) {
      std::vector<long> c(d, 0);
      c[i] = c[j] = 1;
      if (auto v = eval(c)) out.b = std::move(*v);
    }
  if (!out.b) {
    // Prefix sums with growing weights, then the full certificate grid.
    for (size_t w = 1; w <= d && !out.b; ++w) {
      std::vector<long> c(d, 0);
      for (size_t i = 0; i < d; ++i) c[i] = static_cast<long>((i + w) % (deg + 1));
      if (auto v = eval(c)) out.b = std::move(*v);
    }
  }
  if (!out.b) {
    double budget = 1;
    for (size_t i = 0; i < d; ++i) {
      budget *= static_cast<double>(deg + 1);
      if (budget > 4e6) throw Error("BUDGET", "conjugation witness grid too large");
    }
    std::vector<long> c(d, 0);
    while (true) {
      if (auto v = eval(c)) {
        out.b = std::move(*v);
        break;
      }
      size_t pos = 0;
      while (pos < d && c[pos] == static_cast<long>(deg)) c[pos++] = 0;
      if (pos == d) break;
      ++c[pos];
    }
  }
  if (out.b) {
    // Exact verification: phi1(a) b = b phi0(a) on every basis element.
    bool ok = true;
    for (size_t g = 0; g < a->dim() && ok; ++g)
      ok = b->mul(phi1.apply_basis(g), *out.b) == b->mul(*out.b, phi0.apply_basis(g));
    if (!ok) throw Error("INTERNAL", "witness fails the conjugation identity");
    out.report.add("INVERTIBLE_ELEMENT", true);
  } else {
    out.report.add("INVERTIBLE_ELEMENT", false,
                   "determinant vanishes on the full certificate grid");
  }
  return out;
}

}  // namespace superbim
