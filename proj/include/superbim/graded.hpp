#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superbim/scalar.hpp"

namespace superbim {

/// Z2-graded coordinate space: a dimension plus a parity bit per basis vector.
struct GradedSpace {
  std::vector<uint8_t> parity;        // 0 = even, 1 = odd
  std::vector<std::string> labels;    // optional, same length as parity when present

  GradedSpace() = default;
  explicit GradedSpace(std::vector<uint8_t> par) : parity(std::move(par)) {}
  static GradedSpace even(size_t n) { return GradedSpace(std::vector<uint8_t>(n, 0)); }

  size_t dim() const { return parity.size(); }

  size_t even_dim() const {
    size_t c = 0;
    for (uint8_t p : parity) c += (p == 0);
    return c;
  }
  size_t odd_dim() const { return dim() - even_dim(); }

  GradedSpace flipped() const {
    GradedSpace out = *this;
    for (auto& p : out.parity) p ^= 1;
    return out;
  }

  std::string label(size_t i) const {
    if (i < labels.size() && !labels[i].empty()) return labels[i];
    return "e" + std::to_string(i);
  }

  bool operator==(const GradedSpace& o) const { return parity == o.parity; }
};

inline GradedSpace tensor_space(const GradedSpace& a, const GradedSpace& b) {
  GradedSpace out;
  out.parity.reserve(a.dim() * b.dim());
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < b.dim(); ++j)
      out.parity.push_back(static_cast<uint8_t>((a.parity[i] + b.parity[j]) & 1));
  return out;
}

inline GradedSpace sum_space(const GradedSpace& a, const GradedSpace& b) {
  GradedSpace out = a;
  out.parity.insert(out.parity.end(), b.parity.begin(), b.parity.end());
  out.labels.clear();
  return out;
}

/// Sign (-1)^p as a field element.
template <class K>
K parity_sign(uint8_t p) {
  return p ? K(-1) : K(1);
}

/// True when v is supported on basis vectors of a single parity.
template <class K>
bool is_homogeneous(const GradedSpace& s, const Vec<K>& v, uint8_t* parity_out = nullptr) {
  int seen = -1;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == K(0)) continue;
    if (seen == -1)
      seen = s.parity[i];
    else if (seen != s.parity[i])
      return false;
  }
  if (parity_out) *parity_out = seen <= 0 ? 0 : 1;
  return true;
}

}  // namespace superbim
