#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "superbim/cech.hpp"

namespace superbim {

/// Descent invariants of a bundle with central simple fibers: the parity bit
/// per edge, the chosen even intertwiner per edge, and the scalar discrepancy
/// per triangle.
template <class K>
struct DKData {
  std::shared_ptr<const Nerve> nerve;
  std::vector<uint8_t> eps;       // per edge
  std::vector<Matrix<K>> f;       // per edge; empty for combined data
  std::vector<K> x;               // per triangle
};

/// Checks eps is a 1-cocycle and x a 2-cocycle on the given nerve.
template <class K>
Report dk_cocycle_report(const DKData<K>& d) {
  Report rep;
  rep.subject = "descent cocycles";
  bool eps_ok = true;
  for (const auto& t : d.nerve->triangles) {
    uint8_t e01 = d.eps[d.nerve->edge_index(t[0], t[1])];
    uint8_t e12 = d.eps[d.nerve->edge_index(t[1], t[2])];
    uint8_t e02 = d.eps[d.nerve->edge_index(t[0], t[2])];
    if (((e01 + e12) & 1) != e02) {
      eps_ok = false;
      break;
    }
  }
  rep.add("EPS_1_COCYCLE", eps_ok);
  bool x_ok = true;
  for (const auto& s : d.nerve->tetrahedra) {
    const K& x123 = d.x[d.nerve->triangle_index(s[1], s[2], s[3])];
    const K& x023 = d.x[d.nerve->triangle_index(s[0], s[2], s[3])];
    const K& x013 = d.x[d.nerve->triangle_index(s[0], s[1], s[3])];
    const K& x012 = d.x[d.nerve->triangle_index(s[0], s[1], s[2])];
    if (x123 * x013 != x023 * x012) {
      x_ok = false;
      break;
    }
  }
  rep.add("X_2_COCYCLE", x_ok);
  return rep;
}

/// Extracts the descent invariants of an algebra bundle. Per edge, exactly
/// one of Hom(A, A_phi) and Hom(Pi A, A_phi) contains an even invertible
/// intertwiner (the fibers carry exactly two invertible self-bimodules);
/// per triangle, the two canonical composites differ by an exact scalar.
template <class K>
DKData<K> dk_invariants(const AlgebraBundle<K>& d) {
  DKData<K> out;
  out.nerve = d.nerve;
  for (size_t v = 0; v < d.fiber.size(); ++v) {
    StructureReport<K> sr = structure_report(*d.fiber[v]);
    if (!sr.is_central_simple)
      throw Error("NOT_CSA", "fiber at vertex " + std::to_string(v) + " is not central simple");
  }
  for (const auto& e : d.nerve->edges)
    if (!same_algebra(d.fiber[e[0]], d.fiber[e[1]]))
      throw Error("TYPE", "descent invariants need equal fibers along edges");

  std::vector<Bimodule<K>> twisted;
  for (size_t e = 0; e < d.transition.size(); ++e) {
    const AlgebraPtr<K>& a = d.fiber[d.nerve->edges[e][0]];
    Bimodule<K> ident = identity_bimodule(a);
    Bimodule<K> tw = twist(ident, identity_hom(a), d.transition[e]);
    InvertibleSearch<K> plain = find_invertible_intertwiner(ident, tw);
    if (plain.found) {
      out.eps.push_back(0);
      out.f.push_back(std::move(*plain.found));
    } else {
      Bimodule<K> flipped = parity_flip(ident);
      InvertibleSearch<K> odd = find_invertible_intertwiner(flipped, tw);
      if (!odd.found)
        throw Error("INTERNAL", "no invertible intertwiner from either parity class");
      out.eps.push_back(1);
      out.f.push_back(std::move(*odd.found));
    }
    twisted.push_back(std::move(tw));
  }

  for (const auto& t : d.nerve->triangles) {
    long e01 = d.nerve->edge_index(t[0], t[1]);
    long e12 = d.nerve->edge_index(t[1], t[2]);
    long e02 = d.nerve->edge_index(t[0], t[2]);
    if (((out.eps[e01] + out.eps[e12]) & 1) != out.eps[e02])
      throw Error("INTERNAL", "parity classes fail the cocycle identity");
    // Both f_02 and f_12 of_01 are even invertible intertwiners between the
    // same pair, and that space is one-dimensional; the ratio is the scalar.
    Matrix<K> composite = out.f[e12] * out.f[e01];
    const Matrix<K>& direct = out.f[e02];
    std::optional<K> ratio;
    bool proportional = true;
    for (size_t r = 0; r < composite.rows() && proportional; ++r)
      for (size_t c = 0; c < composite.cols(); ++c) {
        const K& num = direct(r, c);
        const K& den = composite(r, c);
        if (den == K(0)) {
          if (!(num == K(0))) proportional = false;
          continue;
        }
        K q = num / den;
        if (!ratio)
          ratio = q;
        else if (!(*ratio == q)) {
          proportional = false;
          break;
        }
      }
    if (!proportional || !ratio)
      throw Error("INTERNAL", "triangle composites are not proportional");
    out.x.push_back(*ratio);
  }
  Report rep = dk_cocycle_report(out);
  if (!rep.overall()) throw Error("INTERNAL", "descent invariants fail a cocycle identity");
  return out;
}

/// Group law on descent invariants: parities add, scalars multiply twisted by
/// the cup-product sign (eps1 u eps2)(abc) = eps1(ab) * eps2(bc).
template <class K>
DKData<K> bw_combine(const DKData<K>& d1, const DKData<K>& d2) {
  if (!(*d1.nerve == *d2.nerve)) throw Error("TYPE", "descent data over different nerves");
  DKData<K> out;
  out.nerve = d1.nerve;
  for (size_t e = 0; e < d1.eps.size(); ++e)
    out.eps.push_back(static_cast<uint8_t>((d1.eps[e] + d2.eps[e]) & 1));
  for (size_t t = 0; t < d1.nerve->triangles.size(); ++t) {
    const auto& tri = d1.nerve->triangles[t];
    uint8_t cup = static_cast<uint8_t>(d1.eps[d1.nerve->edge_index(tri[0], tri[1])] &
                                       d2.eps[d1.nerve->edge_index(tri[1], tri[2])]);
    out.x.push_back(parity_sign<K>(cup) * d1.x[t] * d2.x[t]);
  }
  Report rep = dk_cocycle_report(out);
  if (!rep.overall()) throw Error("INTERNAL", "combined data fails a cocycle identity");
  return out;
}

/// Simplicial cup product of Z2-valued 1-cochains, for tests and reports.
inline std::vector<uint8_t> cup_product_z2(const Nerve& nerve, const std::vector<uint8_t>& a,
                                           const std::vector<uint8_t>& b) {
  std::vector<uint8_t> out;
  for (const auto& tri : nerve.triangles)
    out.push_back(static_cast<uint8_t>(a[nerve.edge_index(tri[0], tri[1])] &
                                       b[nerve.edge_index(tri[1], tri[2])]));
  return out;
}

// ---------------------------------------------------------------------------
// Exact multiplicative coboundary solving over the rationals
// ---------------------------------------------------------------------------

namespace detail_dk {

/// Factors a nonzero rational into sign and prime valuations.
inline void factor_into(const Rational& q, int& sign, std::map<BigInt, long>& vals) {
  BigInt num = numerator(q), den = denominator(q);
  sign = 1;
  if (num < 0) {
    sign = -1;
    num = -num;
  }
  auto grind = [&](BigInt n, int dir) {
    for (BigInt p = 2; p * p <= n;) {
      if (n % p == 0) {
        vals[p] += dir;
        n /= p;
      } else {
        p += p == 2 ? 1 : 2;
        if (p > 1000000) throw Error("BUDGET", "coboundary factorization limit exceeded");
      }
    }
    if (n > 1) vals[n] += dir;
  };
  grind(num, 1);
  grind(den, -1);
}

inline int rational_sign(const Rational& q) { return q < 0 ? -1 : 1; }

/// Solves C v = r over the integers for a small matrix with entries in such
/// that elimination keeps unimodular pivots (holds for simplicial coboundary
/// matrices at this scale). Returns nullopt when inconsistent.
inline std::optional<std::vector<long>> solve_integer(std::vector<std::vector<long>> c,
                                                      std::vector<long> r, bool mod2 = false) {
  size_t rows = c.size();
  size_t cols = rows ? c[0].size() : 0;
  std::vector<long> pivot_col(rows, -1);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t sel = rows;
    for (size_t i = rank; i < rows; ++i)
      if (c[i][col] == 1 || c[i][col] == -1) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(c[rank], c[sel]);
    std::swap(r[rank], r[sel]);
    if (c[rank][col] == -1) {
      for (auto& x : c[rank]) x = -x;
      r[rank] = -r[rank];
    }
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || c[i][col] == 0) continue;
      long f = c[i][col];
      for (size_t j = 0; j < cols; ++j) c[i][j] -= f * c[rank][j];
      r[i] -= f * r[rank];
    }
    pivot_col[rank] = static_cast<long>(col);
    ++rank;
  }
  for (size_t i = rank; i < rows; ++i) {
    bool zero = true;
    for (long x : c[i]) zero &= x == 0;
    if (!zero) throw Error("BUDGET", "integer elimination lost unimodularity");
    if (mod2 ? (r[i] % 2 != 0) : (r[i] != 0)) return std::nullopt;
  }
  std::vector<long> v(cols, 0);
  for (size_t i = 0; i < rank; ++i) v[pivot_col[i]] = r[i];
  return v;
}

}  // namespace detail_dk

/// Solves x_a = x_b * (delta lambda) for a 1-cochain lambda on the nerve's
/// edges, exactly over the rationals (sign bits and prime valuations are
/// solved separately). Returns the edge cochain or nullopt when the classes
/// differ.
inline std::optional<std::vector<Rational>> coboundary_solve(const Nerve& nerve,
                                                             const std::vector<Rational>& xa,
                                                             const std::vector<Rational>& xb) {
  const size_t ne = nerve.edges.size(), nt = nerve.triangles.size();
  std::vector<Rational> q(nt);
  for (size_t t = 0; t < nt; ++t) {
    if (xb[t] == 0) throw Error("DIV0", "zero scalar in descent data");
    q[t] = xa[t] / xb[t];
  }
  if (nt == 0) return std::vector<Rational>(ne, Rational(1));

  // delta(lambda)(abc) = lambda_bc * lambda_ac^{-1} * lambda_ab.
  std::vector<std::vector<long>> c(nt, std::vector<long>(ne, 0));
  for (size_t t = 0; t < nt; ++t) {
    const auto& tri = nerve.triangles[t];
    c[t][nerve.edge_index(tri[1], tri[2])] += 1;
    c[t][nerve.edge_index(tri[0], tri[2])] -= 1;
    c[t][nerve.edge_index(tri[0], tri[1])] += 1;
  }

  // Collect every prime in sight, then solve one integer system per prime
  // and one mod-2 style system for the signs (signs embed as valuations of
  // the formal prime -1, solved over the integers as well).
  std::map<BigInt, std::vector<long>> prime_rhs;
  std::vector<long> sign_rhs(nt, 0);
  for (size_t t = 0; t < nt; ++t) {
    int sign;
    std::map<BigInt, long> vals;
    detail_dk::factor_into(q[t], sign, vals);
    if (sign < 0) sign_rhs[t] = 1;
    for (const auto& [p, v] : vals) {
      auto& vec = prime_rhs.emplace(p, std::vector<long>(nt, 0)).first->second;
      vec[t] = v;
    }
  }

  std::vector<Rational> lambda(ne, Rational(1));
  for (const auto& [p, rhs] : prime_rhs) {
    auto v = detail_dk::solve_integer(c, rhs);
    if (!v) return std::nullopt;
    for (size_t e = 0; e < ne; ++e) {
      long k = (*v)[e];
      for (long i = 0; i < k; ++i) lambda[e] *= Rational(p);
      for (long i = 0; i < -k; ++i) lambda[e] /= Rational(p);
    }
  }
  {
    // Signs live in a mod-2 system.
    auto v = detail_dk::solve_integer(c, sign_rhs, /*mod2=*/true);
    if (!v) return std::nullopt;
    for (size_t e = 0; e < ne; ++e)
      if (((*v)[e] % 2 + 2) % 2 == 1) lambda[e] = -lambda[e];
  }
  // Exact verification.
  for (size_t t = 0; t < nt; ++t) {
    const auto& tri = nerve.triangles[t];
    Rational delta = lambda[nerve.edge_index(tri[1], tri[2])] *
                     lambda[nerve.edge_index(tri[0], tri[1])] /
                     lambda[nerve.edge_index(tri[0], tri[2])];
    if (q[t] != delta) return std::nullopt;
  }
  return lambda;
}

}  // namespace superbim
