#pragma once

// Merging two cone points into one: M(i+j) replaces delta_i, delta_j by their sum,
// M(i-j) by delta_i - delta_j - 2. The constructive ladder picks a merge that keeps
// the vector strictly admissible; the brute-force search is its oracle.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/cubes.hpp"
#include "conemetric/error.hpp"
#include "conemetric/permutation.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

enum class MergeSign { Plus, Minus };

inline const char* sign_name(MergeSign s) { return s == MergeSign::Plus ? "plus" : "minus"; }

/// delta_i, delta_j and delta_i - delta_j, all required to be non-integral.
template <class T>
struct NonIntegralityCertificate {
  T delta_i, delta_j, difference;

  bool valid() const {
    return !num::is_integral(delta_i) && !num::is_integral(delta_j) && !num::is_integral(difference) &&
           difference == T(delta_i - delta_j);
  }
  bool operator==(const NonIntegralityCertificate&) const = default;
};

template <class T>
struct MergeStep {
  std::size_t i = 0, j = 0;  // zero-based, in the ordering of the vector being merged
  MergeSign sign = MergeSign::Plus;
  std::vector<T> result;
  std::optional<NonIntegralityCertificate<T>> certificate;  // Minus only
  std::string rule;                                         // which branch of the ladder fired

  /// Plus is symmetric in (i, j); Minus is not.
  bool same_operation(const MergeStep& o) const {
    if (sign != o.sign) return false;
    if (sign == MergeSign::Plus) return std::minmax(i, j) == std::minmax(o.i, o.j);
    return i == o.i && j == o.j;
  }
  bool operator==(const MergeStep&) const = default;
};

/// Removes i and j and appends the merged entry; survivors keep their order.
template <class T>
std::vector<T> apply_merge(const std::vector<T>& delta, std::size_t i, std::size_t j, MergeSign sign) {
  if (i == j || i >= delta.size() || j >= delta.size())
    throw DomainError(ErrorCode::InvalidArgument, "merge indices must be distinct and in range");
  std::vector<T> out;
  out.reserve(delta.size() - 1);
  for (std::size_t k = 0; k < delta.size(); ++k)
    if (k != i && k != j) out.push_back(delta[k]);
  out.push_back(sign == MergeSign::Plus ? T(delta[i] + delta[j]) : T(delta[i] - delta[j] - T(2)));
  return out;
}

inline LatticePoint merge_lattice_point(const LatticePoint& m, std::size_t i, std::size_t j, MergeSign sign) {
  LatticePoint out;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (k != i && k != j) out.push_back(m[k]);
  out.push_back(sign == MergeSign::Plus ? m[i] + m[j] : m[i] - m[j] - 2);
  return out;
}

template <class T>
MergeStep<T> make_step(const std::vector<T>& delta, std::size_t i, std::size_t j, MergeSign sign,
                       std::string rule = {}) {
  MergeStep<T> s;
  s.i = i;
  s.j = j;
  s.sign = sign;
  s.result = apply_merge(delta, i, j, sign);
  if (sign == MergeSign::Minus) s.certificate = NonIntegralityCertificate<T>{delta[i], delta[j], T(delta[i] - delta[j])};
  s.rule = std::move(rule);
  return s;
}

/// A step is usable when its result is strictly admissible and, for Minus, the
/// certificate holds.
template <class T>
bool step_admissible(const MergeStep<T>& s) {
  if (!strictly_admissible(s.result)) return false;
  return s.sign == MergeSign::Plus || (s.certificate && s.certificate->valid());
}

/// Descending order, ties broken by original index.
template <class T>
Permutation descending_order(const std::vector<T>& delta) {
  Permutation p = identity_permutation(delta.size());
  std::stable_sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) { return delta[a] > delta[b]; });
  return p;
}

namespace detail {

template <class T>
void require_strict(const std::vector<T>& delta) {
  auto r = classify_defect(delta);
  if (r.status != Status::StrictInterior)
    throw DomainError(ErrorCode::NotStrictlyAdmissible,
                      std::string("defect vector is not strictly admissible (") + status_name(r.status) + ")");
}

template <class T>
std::optional<std::size_t> first_integral(const std::vector<T>& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (num::is_integral(v[k])) return k;
  return std::nullopt;
}

}  // namespace detail

/// Evaluated on a descending vector. False exactly when the vector is simplicial and
/// m = (l, -1, ..., -1) with l > delta_1 is a nearest odd point whose (1+n) merge with
/// delta is within distance one.
template <class T>
bool positively_mergeable(const std::vector<T>& sorted) {
  const std::size_t n = sorted.size();
  if (detail::first_integral(sorted)) return true;
  if (classify_point(sorted).kind != PointKind::Simplicial) return true;
  // (b2) with l a vertex of the cube forces l = ceil(delta_1); parity must make m odd.
  long long l = num::floor_ll(sorted[0]) + 1;
  if (l < 1) return true;
  LatticePoint m(n, -1);
  m[0] = l;
  if (!is_odd_point(m)) return true;
  if (l1_distance(sorted, m) != d1_odd_lattice(sorted).distance) return true;
  auto md = apply_merge(sorted, 0, n - 1, MergeSign::Plus);
  auto mm = merge_lattice_point(m, 0, n - 1, MergeSign::Plus);
  return l1_distance(md, mm) > T(1);
}

/// One step of the reduction ladder for a strictly admissible vector with n >= 5.
template <class T>
MergeStep<T> find_merge_constructive(const std::vector<T>& delta) {
  const std::size_t n = delta.size();
  if (n <= 4) throw DomainError(ErrorCode::UnsupportedDimension, "the merge ladder needs n >= 5");
  detail::require_strict(delta);

  const Permutation order = descending_order(delta);
  const std::vector<T> s = reindex(delta, order);

  auto choose = [&](std::size_t p, std::size_t q, MergeSign sign, const char* rule) {
    auto step = make_step(delta, order[p], order[q], sign, rule);
    if (!step_admissible(step))
      throw std::logic_error(std::string("merge ladder branch '") + rule + "' produced an inadmissible vector");
    return step;
  };

  // An integral defect is at least 0, so any plus merge with it keeps positivity, and
  // merging an integral coordinate leaves the holonomy distance unchanged.
  if (auto k = detail::first_integral(s)) return choose(*k, *k == 0 ? 1 : 0, MergeSign::Plus, "integral");

  auto pc = classify_point(s);
  if (pc.kind == PointKind::Center) return choose(0, 1, MergeSign::Plus, "center");
  if (s[0] < T(0)) return choose(0, 1, MergeSign::Plus, "all_negative");

  if (s[1] + s[2] > T(-1)) {
    if (pc.kind == PointKind::NonSimplicial) {
      std::size_t i = pc.integral_index;
      return choose(0, i == 0 ? 1 : i, MergeSign::Plus, "partial_face");
    }
    // Two of m_k - s_k (k < 3) share a sign; zero matches either.
    auto sgn = [&](std::size_t k) {
      T d = T(pc.vertex[k]) - s[k];
      return d > T(0) ? 1 : (d < T(0) ? -1 : 0);
    };
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t q = p + 1; q < 3; ++q)
        if (sgn(p) * sgn(q) >= 0) return choose(p, q, MergeSign::Plus, "partial_simplex");
    throw std::logic_error("no same-signed pair among the first three coordinates");
  }

  if (!positively_mergeable(s)) return choose(0, n - 1, MergeSign::Minus, "negative");

  if (pc.kind == PointKind::NonSimplicial) {
    std::size_t i = pc.integral_index;
    return choose(0, i == 0 ? 1 : i, MergeSign::Plus, "plus_face");
  }

  // Coordinates 2..n lie in (-1, 0), so the nearest odd vertex reads (l, 0 or -1, ...).
  LatticePoint m = pc.vertex;
  if (m[2] == 0 && m[1] == -1) std::swap(m[1], m[2]);
  if (m[2] == 0) {
    m[1] -= 1;
    m[2] -= 1;
  }
  const long long l = m[0];
  if (!(s[0] < T(l))) return choose(0, 2, MergeSign::Plus, "plus_simplex_first_third");
  if (m[1] == 0) return choose(0, 1, MergeSign::Plus, "plus_simplex_first_second");
  for (std::size_t j = 3; j < n; ++j)
    if (m[j] == 0) return choose(0, j, MergeSign::Plus, "plus_simplex_first_other");
  return choose(0, n - 1, MergeSign::Plus, "plus_simplex_first_last");
}

/// Every merge (all pairs, both signs) whose result is strictly admissible.
template <class T>
std::vector<MergeStep<T>> find_merge_bruteforce(const std::vector<T>& delta) {
  const std::size_t n = delta.size();
  if (n < 2) throw DomainError(ErrorCode::UnsupportedDimension, "merging needs at least two points");
  detail::require_strict(delta);
  std::vector<MergeStep<T>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j) {
        auto plus = make_step(delta, i, j, MergeSign::Plus, "search");
        if (step_admissible(plus)) out.push_back(std::move(plus));
      }
      auto minus = make_step(delta, i, j, MergeSign::Minus, "search");
      if (step_admissible(minus)) out.push_back(std::move(minus));
    }
  return out;
}

template <class T>
bool contains_step(const std::vector<MergeStep<T>>& set, const MergeStep<T>& s) {
  return std::any_of(set.begin(), set.end(), [&](const MergeStep<T>& o) { return o.same_operation(s); });
}

template <class T>
struct ReductionChain {
  std::vector<T> start;
  std::vector<MergeStep<T>> steps;
  std::vector<T> base;
  std::vector<Permutation> permutation_log;            // descending order used at each step
  std::vector<AdmissibilityReport<T>> reports;          // report of each step's result

  bool operator==(const ReductionChain&) const = default;
};

/// Merges until stop_at points remain. From four points down to three only an integral
/// coordinate can be merged safely.
template <class T>
ReductionChain<T> reduce_chain(const std::vector<T>& delta, std::size_t stop_at) {
  if (stop_at != 3 && stop_at != 4)
    throw DomainError(ErrorCode::InvalidArgument, "stop_at must be 3 or 4");
  if (delta.size() < stop_at)
    throw DomainError(ErrorCode::UnsupportedDimension, "dimension already below stop_at");
  detail::require_strict(delta);

  ReductionChain<T> chain;
  chain.start = delta;
  std::vector<T> cur = delta;
  while (cur.size() > stop_at) {
    MergeStep<T> step;
    if (cur.size() >= 5) {
      step = find_merge_constructive(cur);
    } else {
      auto k = detail::first_integral(cur);
      if (!k)
        throw DomainError(ErrorCode::UnsupportedDimension,
                          "four points without an integral defect cannot be merged to three");
      step = make_step(cur, *k, *k == 0 ? 1 : 0, MergeSign::Plus, "integral");
      if (!step_admissible(step)) throw std::logic_error("integral merge lost admissibility");
    }
    chain.permutation_log.push_back(descending_order(cur));
    chain.reports.push_back(classify_defect(step.result));
    cur = step.result;
    chain.steps.push_back(std::move(step));
  }
  chain.base = cur;
  return chain;
}

/// Replays the steps from the start; equals chain.base for a consistent chain.
template <class T>
std::vector<T> replay(const ReductionChain<T>& chain) {
  std::vector<T> cur = chain.start;
  for (const auto& s : chain.steps) cur = apply_merge(cur, s.i, s.j, s.sign);
  return cur;
}

}  // namespace conemetric
