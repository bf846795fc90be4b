#pragma once

#include <vector>

#include "superbim/graded.hpp"
#include "superbim/linalg.hpp"

namespace superbim {

/// Quotient of a graded coordinate space by the span of homogeneous relation
/// vectors, presented with an explicit projection and a section.
///
/// projection * section = identity on the quotient, and
/// section * projection - identity has image inside span(relations).
template <class K>
struct QuotientPresentation {
  GradedSpace ambient;
  std::vector<Vec<K>> relations;  // canonical RREF basis of the relation span
  Matrix<K> projection;           // quotient_dim x ambient_dim
  Matrix<K> section;              // ambient_dim x quotient_dim
  GradedSpace quotient;

  size_t dim() const { return quotient.dim(); }

  Vec<K> project(const Vec<K>& v) const { return projection.apply(v); }
  Vec<K> lift(const Vec<K>& v) const { return section.apply(v); }
};

/// Builds the quotient presentation. Pivot columns of the relation span are
/// eliminated; the surviving coordinates (free columns) index the quotient
/// basis, so the output is deterministic given the relation span.
template <class K>
QuotientPresentation<K> quotient_with_section(const GradedSpace& ambient,
                                              const std::vector<Vec<K>>& relations) {
  const size_t n = ambient.dim();
  for (const auto& r : relations) {
    if (r.size() != n) throw Error("SHAPE", "relation of wrong dimension");
    if (!is_homogeneous(ambient, r))
      throw Error("GRADING", "non-homogeneous relation in graded quotient");
  }
  RowSpan<K> span(n);
  for (const auto& r : relations) span.insert(r);

  std::vector<bool> is_pivot(n, false);
  for (size_t p : span.pivot_cols()) is_pivot[p] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  QuotientPresentation<K> q;
  q.ambient = ambient;
  q.relations = span.rows();
  q.quotient.parity.reserve(free_cols.size());
  for (size_t f : free_cols) {
    q.quotient.parity.push_back(ambient.parity[f]);
    if (!ambient.labels.empty()) q.quotient.labels.push_back(ambient.label(f));
  }

  q.projection = Matrix<K>(free_cols.size(), n);
  for (size_t t = 0; t < free_cols.size(); ++t) q.projection(t, free_cols[t]) = K(1);
  // e_p = -sum_f R[r][f] e_f modulo the relations, for the pivot p of row r.
  for (size_t r = 0; r < span.rank(); ++r) {
    size_t p = span.pivot_cols()[r];
    for (size_t t = 0; t < free_cols.size(); ++t) q.projection(t, p) = -span.rows()[r][free_cols[t]];
  }

  q.section = Matrix<K>(n, free_cols.size());
  for (size_t t = 0; t < free_cols.size(); ++t) q.section(free_cols[t], t) = K(1);
  return q;
}

/// Descends an ambient-level linear map src_ambient -> tgt_ambient to the
/// quotients. Returns nullopt when the map does not kill the source relations
/// modulo the target relations.
template <class K>
std::optional<Matrix<K>> descend_map(const QuotientPresentation<K>& src,
                                     const QuotientPresentation<K>& tgt,
                                     const Matrix<K>& ambient_map) {
  for (const auto& r : src.relations) {
    if (!is_zero_vec(tgt.project(ambient_map.apply(r)))) return std::nullopt;
  }
  return tgt.projection * ambient_map * src.section;
}

}  // namespace superbim
