#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

namespace conemetric {

/// A permutation p acts on vectors by reindexing: (v . p)[k] = v[p[k]].
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

template <class V>
V reindex(const V& v, const Permutation& p) {
  V out;
  out.reserve(p.size());
  for (auto k : p) out.push_back(v[k]);
  return out;
}

/// reindex(reindex(v, p), q) == reindex(v, compose(p, q)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) r[k] = p[q[k]];
  return r;
}

inline Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) r[p[k]] = k;
  return r;
}

inline bool is_identity(const Permutation& p) {
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != k) return false;
  return true;
}

inline bool is_permutation_of(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n);
  for (auto k : p) {
    if (k >= n || seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Symmetries of a quadrilateral with cyclic vertex order 0-1-2-3: generated by the
/// rotation and the reflection fixing vertices 1 and 3.
inline const std::vector<Permutation>& dihedral8() {
  static const std::vector<Permutation> group = [] {
    const Permutation rot{1, 2, 3, 0}, refl{2, 1, 0, 3};
    std::set<Permutation> seen{identity_permutation(4)};
    std::vector<Permutation> frontier{identity_permutation(4)};
    while (!frontier.empty()) {
      Permutation p = frontier.back();
      frontier.pop_back();
      for (const auto& g : {rot, refl}) {
        Permutation q = compose(p, g);
        if (seen.insert(q).second) frontier.push_back(q);
      }
    }
    return std::vector<Permutation>(seen.begin(), seen.end());
  }();
  return group;
}

inline bool in_dihedral8(const Permutation& p) {
  const auto& g = dihedral8();
  return std::find(g.begin(), g.end(), p) != g.end();
}

struct DihedralSplit {
  Permutation polygon;  // element of the dihedral group, applied to the quadrilateral
  Permutation relabel;  // coset representative, applied to the doubled sphere
};

/// Writes p = compose(polygon, relabel) with polygon in the dihedral group and relabel
/// one of three fixed coset representatives.
inline DihedralSplit split_dihedral(const Permutation& p) {
  static const std::vector<Permutation> reps{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 1, 3, 2}};
  for (const auto& r : reps) {
    Permutation d = compose(p, inverse(r));
    if (in_dihedral8(d)) return {d, r};
  }
  return {identity_permutation(4), p};  // unreachable for permutations of four points
}

}  // namespace conemetric
