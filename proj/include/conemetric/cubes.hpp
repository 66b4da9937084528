#pragma once

// Unit integer cubes intersected with the holonomy region, radial projection to their
// boundary, coverage by half cubes, and interior paths between admissible points.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/error.hpp"
#include "conemetric/permutation.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

/// Unit cube around a half-integral center, cut down to the points at l1 distance at
/// least one from every odd vertex.
template <class T>
class TruncatedCube {
 public:
  explicit TruncatedCube(std::vector<T> center) : center_(std::move(center)) {
    if (center_.empty()) throw DomainError(ErrorCode::EmptyVector, "cube center is empty");
    for (const auto& c : center_)
      if (!num::is_integral(T(c - num::half<T>())))
        throw DomainError(ErrorCode::InvalidArgument, "cube center must be half-integral");
  }

  const std::vector<T>& center() const { return center_; }
  std::size_t dim() const { return center_.size(); }

  long long lower(std::size_t j) const { return num::floor_ll(center_[j]); }

  bool in_box(const std::vector<T>& x, bool strict = false) const {
    if (x.size() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j) {
      T gap = num::abs(T(x[j] - center_[j]));
      if (strict ? !(gap < num::half<T>()) : gap > num::half<T>()) return false;
    }
    return true;
  }

  /// Smallest l1 distance from x to an odd vertex of this cube, with the vertex.
  /// Inside the box this equals the linear form sum_j s_j (x_j - m_j).
  std::pair<T, LatticePoint> nearest_odd_vertex(const std::vector<T>& x) const {
    std::vector<T> up, down;
    long long base = 0;
    for (std::size_t j = 0; j < dim(); ++j) {
      long long lo = lower(j);
      base += lo;
      down.push_back(num::abs(T(x[j] - T(lo))));
      up.push_back(num::abs(T(T(lo + 1) - x[j])));
    }
    auto best = min_over_subsets(up, down, base % 2 == 0);
    LatticePoint m(dim());
    for (std::size_t j = 0; j < dim(); ++j) m[j] = lower(j);
    for (auto j : best.subset) m[j] += 1;
    return {best.value, m};
  }

  bool contains(const std::vector<T>& x) const {
    return in_box(x) && !(nearest_odd_vertex(x).first < T(1));
  }

  bool interior_contains(const std::vector<T>& x) const {
    return in_box(x, true) && nearest_odd_vertex(x).first > T(1);
  }

  std::vector<LatticePoint> vertices(bool odd) const {
    std::vector<LatticePoint> out;
    const std::size_t n = dim();
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
      LatticePoint m(n);
      for (std::size_t j = 0; j < n; ++j) m[j] = lower(j) + static_cast<long long>((mask >> j) & 1);
      if (is_odd_point(m) == odd) out.push_back(std::move(m));
    }
    return out;
  }

  bool operator==(const TruncatedCube&) const = default;

 private:
  std::vector<T> center_;
};

/// The cube whose interior holds delta. Integral coordinates sit on a shared face.
template <class T>
TruncatedCube<T> containing_cube(const std::vector<T>& delta) {
  std::vector<T> c;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (num::is_integral(delta[j]))
      throw DomainError(ErrorCode::AmbiguousCube,
                        "coordinate " + std::to_string(j + 1) + " is integral");
    c.push_back(T(num::floor_ll(delta[j])) + num::half<T>());
  }
  return TruncatedCube<T>(std::move(c));
}

/// Cube selected by flooring; defined for every point.
template <class T>
TruncatedCube<T> floor_cube(const std::vector<T>& x) {
  std::vector<T> c;
  for (const auto& v : x) c.push_back(T(num::floor_ll(v)) + num::half<T>());
  return TruncatedCube<T>(std::move(c));
}

enum class Binding { Face, Simplex };

template <class T>
struct BoundaryProjection {
  T t;                    // scale factor along the ray from the center, > 1
  std::vector<T> point;   // center + t * (delta - center)
  Binding binding;
  std::size_t face_index = 0;  // zero-based, meaningful for Face
  LatticePoint vertex;         // odd vertex, meaningful for Simplex
};

/// Pushes delta away from the cube center until the first constraint becomes tight.
/// A tie between a face and a simplex cut is reported as Simplex.
template <class T>
BoundaryProjection<T> project_to_boundary(const std::vector<T>& delta, const TruncatedCube<T>& cube) {
  const std::size_t n = cube.dim();
  if (delta.size() != n) throw DomainError(ErrorCode::InvalidArgument, "dimension mismatch");
  std::vector<T> u(n);
  bool at_center = true;
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = delta[j] - cube.center()[j];
    if (u[j] != T(0)) at_center = false;
  }
  if (at_center) throw DomainError(ErrorCode::CenterPoint, "point is the cube center");
  if (!cube.interior_contains(delta))
    throw DomainError(ErrorCode::OutsideCube, "point is not interior to the truncated cube");

  std::optional<T> t_face;
  std::size_t face = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (u[j] == T(0)) continue;
    T t = num::half<T>() / num::abs(u[j]);
    if (!t_face || t < *t_face) {
      t_face = t;
      face = j;
    }
  }

  // Along the ray, the cut of odd vertex m reads n/2 + t * sum_j s_j u_j >= 1, so the
  // first cut reached maximizes sum_j (+u_j at upper coordinates, -u_j at lower ones).
  // Among maximizers the lexicographically smallest vertex is taken.
  LatticePoint m(n);
  T score(0);
  long long vsum = 0;
  bool has_zero = false;
  std::size_t last_zero = 0;
  for (std::size_t j = 0; j < n; ++j) {
    bool up = u[j] > T(0);
    m[j] = cube.lower(j) + (up ? 1 : 0);
    vsum += m[j];
    score += num::abs(u[j]);
    if (u[j] == T(0)) {
      has_zero = true;
      last_zero = j;
    }
  }
  if (vsum % 2 == 0) {
    if (has_zero) {
      m[last_zero] += 1;
    } else {
      T gap = num::abs(u[0]);
      for (std::size_t j = 1; j < n; ++j)
        if (num::abs(u[j]) < gap) gap = num::abs(u[j]);
      std::optional<std::size_t> first_upper, last_lower;
      for (std::size_t j = 0; j < n; ++j) {
        if (num::abs(u[j]) != gap) continue;
        if (u[j] > T(0) && !first_upper) first_upper = j;
        if (u[j] < T(0)) last_lower = j;
      }
      if (first_upper)
        m[*first_upper] -= 1;
      else
        m[*last_lower] += 1;
      score -= T(2) * gap;
    }
  }

  std::optional<T> t_simplex;
  T rise = T(static_cast<long long>(n)) * num::half<T>() - T(1);
  if (score > T(0)) t_simplex = rise / score;

  BoundaryProjection<T> out;
  if (t_simplex && (!t_face || !(*t_face < *t_simplex))) {
    out.t = *t_simplex;
    out.binding = Binding::Simplex;
    out.vertex = m;
  } else {
    out.t = *t_face;
    out.binding = Binding::Face;
    out.face_index = face;
  }
  out.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.point[j] = cube.center()[j] + out.t * u[j];
  if (out.binding == Binding::Face) {
    // The projected coordinate is exactly integral; pin it to avoid float drift.
    out.point[face] = T(cube.lower(face) + (u[face] > T(0) ? 1 : 0));
  }
  return out;
}

enum class PointKind { Center, Simplicial, NonSimplicial };

inline const char* point_kind_name(PointKind k) {
  switch (k) {
    case PointKind::Center: return "center";
    case PointKind::Simplicial: return "simplicial";
    case PointKind::NonSimplicial: return "non_simplicial";
  }
  return "unknown";
}

template <class T>
struct PointClassification {
  PointKind kind = PointKind::Center;
  std::vector<T> center;
  std::optional<BoundaryProjection<T>> projection;
  LatticePoint vertex;              // Simplicial: odd vertex with d1(projection, vertex) = 1
  std::size_t integral_index = 0;   // NonSimplicial: zero-based integral coordinate of the projection
};

template <class T>
PointClassification<T> classify_point(const std::vector<T>& delta) {
  auto cube = containing_cube(delta);
  PointClassification<T> out;
  out.center = cube.center();
  if (delta == cube.center()) return out;
  auto proj = project_to_boundary(delta, cube);
  if (proj.binding == Binding::Simplex) {
    out.kind = PointKind::Simplicial;
    out.vertex = proj.vertex;
  } else {
    out.kind = PointKind::NonSimplicial;
    out.integral_index = proj.face_index;
  }
  out.projection = std::move(proj);
  return out;
}

/// Points of the truncated cube within l1 distance two of the even vertex.
template <class T>
class HalfTruncatedCube {
 public:
  HalfTruncatedCube(TruncatedCube<T> cube, LatticePoint vertex) : cube_(std::move(cube)), vertex_(std::move(vertex)) {
    if (vertex_.size() != cube_.dim() || is_odd_point(vertex_))
      throw DomainError(ErrorCode::InvalidArgument, "half cube needs an even vertex of the cube");
    for (std::size_t j = 0; j < cube_.dim(); ++j)
      if (vertex_[j] != cube_.lower(j) && vertex_[j] != cube_.lower(j) + 1)
        throw DomainError(ErrorCode::InvalidArgument, "vertex is not a corner of the cube");
  }

  const TruncatedCube<T>& cube() const { return cube_; }
  const LatticePoint& vertex() const { return vertex_; }

  bool contains(const std::vector<T>& p) const {
    return cube_.contains(p) && !(l1_distance(p, vertex_) > T(2));
  }
  bool interior_contains(const std::vector<T>& p) const {
    return cube_.interior_contains(p) && l1_distance(p, vertex_) < T(2);
  }

 private:
  TruncatedCube<T> cube_;
  LatticePoint vertex_;
};

enum class PermutationGroup { D8, S4 };

inline const std::vector<Permutation>& group_elements(PermutationGroup g) {
  static const std::vector<Permutation> s4 = all_permutations(4);
  return g == PermutationGroup::D8 ? dihedral8() : s4;
}

struct CoverageTable {
  std::string name;
  std::vector<Rational> center;
  std::vector<LatticePoint> vertices;
};

/// Even vertices whose half cubes cover the three cube types met by four-point spheres.
inline const std::vector<CoverageTable>& coverage_tables() {
  static const std::vector<CoverageTable> tables = [] {
    const Rational h(1, 2), t(3, 2), f(5, 2);
    return std::vector<CoverageTable>{
        {"one_big", {t, h, h, h},
         {{1, 0, 1, 0}, {1, 1, 0, 0}, {1, 0, 0, 1}, {2, 0, 1, 1}, {2, 1, 0, 1}, {2, 1, 1, 0}}},
        {"two_big", {t, t, h, h},
         {{2, 2, 1, 1}, {1, 1, 0, 0}, {1, 1, 1, 1}, {2, 2, 0, 0},
          {2, 1, 0, 1}, {2, 1, 1, 0}, {1, 2, 0, 1}, {1, 2, 1, 0}}},
        {"one_huge", {f, h, h, h},
         {{3, 1, 1, 1}, {2, 1, 1, 0}, {2, 1, 0, 1}, {2, 0, 1, 1}, {3, 1, 0, 0}, {3, 0, 1, 0}, {3, 0, 0, 1}}},
    };
  }();
  return tables;
}

inline const CoverageTable& coverage_table(const std::string& name) {
  for (const auto& t : coverage_tables())
    if (t.name == name) return t;
  throw DomainError(ErrorCode::InvalidArgument, "unknown cube '" + name + "'");
}

template <class T>
struct CoverageResult {
  bool covered = false;
  LatticePoint vertex;
  Permutation permutation;  // reindex(target, permutation) lies in the chosen half cube
};

/// Covered means some reordering of the target lies in the box of the cube at l1
/// distance strictly below two from one of the listed vertices.
template <class T>
CoverageResult<T> coverage_check(const std::vector<T>& target, const std::vector<T>& center,
                                 const std::vector<LatticePoint>& vertices, PermutationGroup group) {
  TruncatedCube<T> cube(center);
  if (target.size() != 4 || cube.dim() != 4)
    throw DomainError(ErrorCode::InvalidArgument, "coverage is defined for four angles");
  if (!cube.contains(target)) throw DomainError(ErrorCode::OutsideCube, "target is outside the truncated cube");
  for (const auto& p : group_elements(group)) {
    auto moved = reindex(target, p);
    if (!cube.in_box(moved)) continue;
    for (const auto& m : vertices)
      if (l1_distance(moved, m) < T(2)) return {true, m, p};
  }
  return {};
}

template <class T>
struct InteriorPath {
  std::vector<std::vector<T>> vertices;
  T min_breakpoint_distance{};
  T min_sample_distance{};
  std::vector<std::size_t> positivity_violations;  // segment indices leaving the positivity region
};

namespace detail {
template <class T>
bool positive_defect(const std::vector<T>& d) {
  for (const auto& x : d)
    if (!(x > T(-1))) return false;
  return num::sum(d) > T(-2);
}
}  // namespace detail

/// Polyline from a to b inside the open holonomy region: a, the center of its cube,
/// unit steps between neighbouring centers through the midpoint of their common face,
/// the center of b's cube, b. Each segment is sampled and checked.
template <class T>
InteriorPath<T> interior_path(const std::vector<T>& a, const std::vector<T>& b, std::size_t samples = 64) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DomainError(ErrorCode::InvalidArgument, "endpoints differ in dimension");
  if (n < 4) throw DomainError(ErrorCode::UnsupportedDimension, "interior paths need n >= 4");
  for (const auto* p : {&a, &b})
    if (!(d1_odd_lattice(*p).distance > T(1)))
      throw DomainError(ErrorCode::NotStrictlyAdmissible, "endpoint is not interior to the holonomy region");

  InteriorPath<T> path;
  auto push = [&](std::vector<T> v) {
    if (path.vertices.empty() || path.vertices.back() != v) path.vertices.push_back(std::move(v));
  };
  push(a);
  if (a != b) {
    std::vector<T> c = floor_cube(a).center();
    const std::vector<T> cb = floor_cube(b).center();
    push(c);
    for (std::size_t j = 0; j < n; ++j) {
      while (c[j] != cb[j]) {
        T step = cb[j] > c[j] ? T(1) : T(-1);
        c[j] += step * num::half<T>();
        push(c);
        c[j] += step * num::half<T>();
        push(c);
      }
    }
    push(b);
  }

  path.min_breakpoint_distance = d1_odd_lattice(path.vertices.front()).distance;
  for (const auto& v : path.vertices) {
    T d = d1_odd_lattice(v).distance;
    if (d < path.min_breakpoint_distance) path.min_breakpoint_distance = d;
  }
  path.min_sample_distance = path.min_breakpoint_distance;
  for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
    const auto& p = path.vertices[s];
    const auto& q = path.vertices[s + 1];
    for (std::size_t k = 1; k < samples; ++k) {
      T t = T(static_cast<long long>(k)) / T(static_cast<long long>(samples));
      std::vector<T> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = p[j] + t * (q[j] - p[j]);
      T d = d1_odd_lattice(x).distance;
      if (d < path.min_sample_distance) path.min_sample_distance = d;
    }
    if (!detail::positive_defect(p) || !detail::positive_defect(q)) path.positivity_violations.push_back(s);
  }
  return path;
}

}  // namespace conemetric
