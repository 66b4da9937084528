#pragma once

// Builds construction plans for spheres with prescribed cone angles: triangles for
// three points, quadrilaterals, sporadic covers and path surgeries for four, and
// cone-point splitting on top of a merge chain for five or more.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/catalog.hpp"
#include "conemetric/error.hpp"
#include "conemetric/merging.hpp"
#include "conemetric/permutation.hpp"
#include "conemetric/plan.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

inline constexpr const char* kLengthNotMultipleOfPi = "length not in pi*Z";

struct Gamma3Decomposition {
  LatticePoint m;
  std::vector<Rational> base;  // theta - m, inside [0,2] x [0,1] x [0,1]
};

namespace detail {

/// Lexicographically largest m with m1 >= m2 >= m3 >= 0, even sum and
/// theta_k - m_k in [0, width_k].
inline std::optional<Gamma3Decomposition> gamma3_search(const std::vector<Rational>& theta,
                                                        const std::array<long long, 3>& width) {
  auto range = [&](std::size_t k) {
    long long hi = num::floor_ll(theta[k]);
    long long lo = std::max(0LL, num::floor_ll(theta[k] - Rational(width[k])) + (num::is_integral(theta[k]) ? 0 : 1));
    return std::pair{lo, hi};
  };
  auto [lo1, hi1] = range(0);
  auto [lo2, hi2] = range(1);
  auto [lo3, hi3] = range(2);
  for (long long a = hi1; a >= lo1; --a)
    for (long long b = std::min(a, hi2); b >= lo2; --b)
      for (long long c = std::min(b, hi3); c >= lo3; --c) {
        if ((a + b + c) % 2 != 0) continue;
        return Gamma3Decomposition{{a, b, c}, {theta[0] - a, theta[1] - b, theta[2] - c}};
      }
  return std::nullopt;
}

}  // namespace detail

/// theta = base + m with m1 >= m2 >= m3 >= 0 of even sum. Among the admissible m the
/// lexicographically largest is taken, which is the floor vector with the first
/// coordinate lowered by one when the floors have odd sum.
inline Gamma3Decomposition gamma3_decompose(const std::vector<Rational>& theta) {
  if (theta.size() != 3) throw DomainError(ErrorCode::UnsupportedDimension, "expected three angles");
  for (const auto& x : theta)
    if (!(x > 0)) throw DomainError(ErrorCode::NonPositiveEntry, "angles must be positive");
  if (theta[0] < theta[1] || theta[1] < theta[2])
    throw DomainError(ErrorCode::InvalidArgument, "angles must be sorted in descending order");
  if (auto g = detail::gamma3_search(theta, {2, 1, 1})) return *g;
  throw DomainError(ErrorCode::InvalidArgument, "no translate of the base box contains these angles");
}

namespace detail {

inline PlanNode leaf(PlanKind kind, AffineVector params) {
  PlanNode n;
  n.kind = kind;
  n.parameters = std::move(params);
  return finish(std::move(n));
}

inline PlanNode exceptional_bigon(long long d, std::string side) {
  PlanNode n;
  n.kind = PlanKind::ExceptionalBigon;
  n.numbers["d"] = d;
  n.symbol = std::move(side);
  n.constraints.push_back("side length " + n.symbol + " in (0, 2*pi)");
  return finish(std::move(n));
}

inline PlanNode edge_glue(std::vector<PlanNode> pieces, std::vector<std::vector<Contribution>> groups,
                          std::vector<std::vector<Contribution>> smooth, std::string how) {
  PlanNode n;
  n.kind = PlanKind::EdgeGlue;
  n.children = std::move(pieces);
  n.groups = std::move(groups);
  n.smooth = std::move(smooth);
  n.constraints.push_back(std::move(how));
  return finish(std::move(n));
}

/// Glues B(d, |x_p x_q|) to the side joining vertices p and q of a triangle.
inline PlanNode attach_bigon(PlanNode tri, long long d, std::size_t p, std::size_t q) {
  if (d == 0) return tri;
  std::string side = "|x" + std::to_string(p + 1) + "x" + std::to_string(q + 1) + "|";
  std::vector<std::vector<Contribution>> groups;
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<Contribution> g{{0, k}};
    if (k == p) g.push_back({1, 0});
    if (k == q) g.push_back({1, 1});
    groups.push_back(std::move(g));
  }
  return edge_glue({std::move(tri), exceptional_bigon(d, side)}, std::move(groups), {},
                   "bigon glued along side " + side);
}

/// Triangle with angle t[apex] in [0,2] and the other two in [0,1], strictly admissible.
inline PlanNode base_triangle(const std::vector<Rational>& t, std::size_t apex) {
  if (t[apex] < 1) return leaf(PlanKind::ConvexTriangle, affine_vector(t));
  std::vector<Rational> inner(3);
  for (std::size_t k = 0; k < 3; ++k) inner[k] = (k == apex ? 2 : 1) - t[k];
  PlanNode n;
  n.kind = PlanKind::ComplementTriangle;
  n.indices = {apex};
  n.children.push_back(leaf(PlanKind::ConvexTriangle, affine_vector(inner)));
  return finish(std::move(n));
}

inline PlanNode sorted_triangle(const std::vector<Rational>& s) {
  // Sorted triples such as (3/2, 3/2, 3/2) have no decomposition with the large base
  // angle first; with m1 = m2 forced there, the large angle goes to the last slot.
  std::size_t apex = 0;
  auto g = gamma3_search(s, {2, 1, 1});
  if (!g) {
    g = gamma3_search(s, {1, 1, 2});
    apex = 2;
  }
  if (!g) throw DomainError(ErrorCode::InvalidArgument, "no translate of the base box contains these angles");
  const auto& [m, t] = *g;
  PlanNode tri = base_triangle(t, apex);
  if (m[0] > m[1] + m[2]) {
    if (apex != 0) throw std::logic_error("cone case needs the large base angle first");
    long long d = (m[0] - m[1] - m[2]) / 2;
    PlanNode cone;
    cone.kind = PlanKind::ConeTriangle;
    cone.numbers["d"] = d;
    cone.numbers["alpha"] = Rational(1 - t[2]);
    cone.symbol = "|x'1x'3|";
    cone.constraints.push_back("sides adjacent to the 2d vertex have length |x'1x'3| < pi");
    cone = finish(std::move(cone));
    // x''1 meets x'1, x''2 meets x'3 at a smooth boundary point, x''3 is the new third vertex
    tri = edge_glue({std::move(tri), std::move(cone)}, {{{0, 0}, {1, 0}}, {{0, 1}}, {{1, 2}}}, {{{0, 2}, {1, 1}}},
                    "side x''1x''2 of the cone triangle glued to x'1x'3");
    tri = attach_bigon(std::move(tri), m[1], 0, 1);
    tri = attach_bigon(std::move(tri), m[2], 0, 2);
  } else {
    tri = attach_bigon(std::move(tri), (m[1] + m[2] - m[0]) / 2, 1, 2);
    tri = attach_bigon(std::move(tri), (m[2] + m[0] - m[1]) / 2, 2, 0);
    tri = attach_bigon(std::move(tri), (m[0] + m[1] - m[2]) / 2, 0, 1);
  }
  return tri;
}

inline void require_strict_angles(const std::vector<Rational>& theta) {
  for (const auto& x : theta)
    if (!(x > 0)) throw DomainError(ErrorCode::NonPositiveEntry, "angles must be positive");
  std::vector<Rational> delta(theta);
  for (auto& x : delta) x -= 1;
  auto r = classify_defect(delta);
  if (r.status != Status::StrictInterior)
    throw DomainError(ErrorCode::NotStrictlyAdmissible,
                      std::string("angles are not strictly admissible (") + status_name(r.status) +
                          ", distance " + to_string(r.holonomy_distance) + ")");
}

}  // namespace detail

/// Triangle with inner angles pi * theta (any order).
inline PlanNode plan_triangle(const std::vector<Rational>& theta) {
  if (theta.size() != 3) throw DomainError(ErrorCode::UnsupportedDimension, "a triangle has three angles");
  detail::require_strict_angles(theta);
  Permutation order = descending_order(theta);
  PlanNode sorted = detail::sorted_triangle(reindex(theta, order));
  return make_relabel(std::move(sorted), inverse(order));
}

/// A quadrilateral whose sphere double, relabeled by `relabel`, has the requested angles.
struct QuadPlan {
  PlanNode polygon;
  Permutation relabel;
};

/// Quadrilateral plan for four angles (units of pi), possibly after a relabeling that
/// is only legitimate on the doubled sphere.
inline QuadPlan plan_quadrilateral(const std::vector<Rational>& theta) {
  if (theta.size() != 4) throw DomainError(ErrorCode::UnsupportedDimension, "a quadrilateral has four angles");
  for (const auto& x : theta)
    if (!(x > 0)) throw DomainError(ErrorCode::NonPositiveEntry, "angles must be positive");

  if (in_convex_half_cube(theta)) return {detail::leaf(PlanKind::ConvexQuad, affine_vector(theta)), identity_permutation(4)};

  const auto& rows = quad_catalog();
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (const auto& sigma : all_permutations(4)) {
      auto moved = reindex(theta, sigma);
      if (!in_row_image(rows[i], moved)) continue;
      auto base = rows[i].invert(moved);
      auto split = split_dihedral(inverse(sigma));
      PlanNode n;
      n.kind = PlanKind::CatalogQuad;
      n.numbers["row"] = static_cast<long long>(i);
      n.permutation = split.polygon;
      n.tag = "catalog quadrilateral Q_" + std::to_string(i);
      if (i >= 8) n.constraints.push_back("the vertex with angle above 2 joins every other vertex by a geodesic shorter than pi");
      n.children.push_back(detail::leaf(PlanKind::ConvexQuad, affine_vector(base)));
      return {finish(std::move(n)), split.relabel};
    }

  const Rational h(1, 2), t(3, 2);
  const std::vector<Rational> center{t, h, t, h};
  for (const auto& p : all_permutations(4)) {
    if (reindex(center, p) != theta) continue;
    PlanNode bigon;
    bigon.kind = PlanKind::OrdinaryBigon;
    bigon.numbers["alpha"] = h;
    bigon = finish(std::move(bigon));
    PlanNode n;
    n.kind = PlanKind::CenterQuad;
    n.children = {bigon, bigon};
    n.constraints.push_back("segments x1y' and y''x3 of equal length r in (0, pi) identified");
    auto split = split_dihedral(p);
    return {make_relabel(finish(std::move(n)), split.polygon), split.relabel};
  }
  throw DomainError(ErrorCode::NotQuadCoverable, "no catalog quadrilateral has these angles up to relabeling");
}

inline PlanNode quad_sphere(QuadPlan q) { return make_relabel(make_double(std::move(q.polygon)), q.relabel); }

namespace detail {

inline NonCoaxialCertificate certificate(std::size_t i, std::size_t j, std::string geodesic) {
  return {i, j, std::move(geodesic), {kLengthNotMultipleOfPi, "both end angles non-integral"}};
}

inline PlanNode sporadic_cover(PlanKind kind, const Rational& a) {
  bool is_a = kind == PlanKind::SporadicA;
  std::vector<Rational> tri = is_a ? std::vector<Rational>{Rational((1 + a) / 3), Rational(1 - a), Rational(1, 3)}
                                   : std::vector<Rational>{Rational((2 + a) / 3), a, Rational(1, 3)};
  PlanNode cover;
  cover.kind = PlanKind::CyclicCover;
  cover.numbers["degree"] = 3;
  cover.indices = {0, 2};
  cover.children.push_back(make_double(plan_triangle(tri)));
  PlanNode n;
  n.kind = kind;
  n.numbers[is_a ? "a" : "b"] = a;
  n.children.push_back(finish(std::move(cover)));
  n.constraints.push_back("geodesics from x1 to x2, x3, x4 shorter than pi (lifts of the side y1y2)");
  return finish(std::move(n));
}

/// Sphere with angles exactly `base` (no integral entry, inside one of the cubes met
/// by the four-point case machine).
inline PlanNode base_sphere4(const std::vector<Rational>& base, std::size_t ci, std::size_t cj,
                             const std::string& geodesic) {
  PlanNode n;
  bool equal_tail = base[1] == base[2] && base[2] == base[3];
  const Rational& x = base[1];
  if (equal_tail && base[0] == 2 - x && base[0] > 1 && base[0] < 2) {
    n = sporadic_cover(PlanKind::SporadicA, Rational(base[0] - 1));
  } else if (equal_tail && base[0] == 2 + x && x > 0 && x < Rational(1, 2)) {
    n = sporadic_cover(PlanKind::SporadicB, x);
  } else if (equal_tail && base[0] == Rational(5, 2) && x == Rational(1, 2)) {
    n.kind = PlanKind::SporadicC;
    n.constraints.push_back("boundary segment length l in (0, pi)");
    n = finish(std::move(n));
  } else {
    n = quad_sphere(plan_quadrilateral(base));
  }
  n.certificate = certificate(ci, cj, geodesic);
  return n;
}

inline PlanNode surgery(PlanKind kind, PlanNode child, std::size_t i, std::size_t j, long long d) {
  if (d == 0) return child;
  PlanNode n;
  n.kind = kind;
  n.indices = {i, j};
  n.numbers["d"] = d;
  std::string path = "gamma_" + std::to_string(i + 1) + std::to_string(j + 1);
  if (kind == PlanKind::GlueSlitCopies) {
    n.constraints.push_back(path + " simple and simply developable");
  } else {
    n.constraints.push_back(path + " geodesic of length < pi");
    n.constraints.push_back("angle at x" + std::to_string(j + 1) + " below 1");
  }
  n.certificate = child.certificate;
  n.children.push_back(std::move(child));
  return finish(std::move(n));
}

/// Greedy decomposition of p into pairs e_kl: always pair the two largest coordinates.
inline std::map<std::pair<std::size_t, std::size_t>, long long> gamma4_pairs(LatticePoint p) {
  std::map<std::pair<std::size_t, std::size_t>, long long> out;
  auto total = [&] { return coordinate_sum(p); };
  while (total() > 0) {
    Permutation order = descending_order(p);
    std::size_t k = order[0], l = order[1];
    if (p[l] == 0) throw std::logic_error("vector is not a sum of pairs e_kl");
    --p[k];
    --p[l];
    ++out[std::minmax(k, l)];
  }
  return out;
}

inline const char* kSixPaths = "six simple paths gamma_ij with disjoint interiors on the base sphere";

inline PlanNode sorted_sphere4(const std::vector<Rational>& s) {
  LatticePoint m;
  for (const auto& x : s) m.push_back(num::floor_ll(x));
  const long long total = coordinate_sum(m);
  const long long rest = m[1] + m[2] + m[3];
  const std::string g13 = "gamma_13: either gamma_13 or gamma_14 is a geodesic shorter than pi; gamma_13 is used";

  auto shifted = [&](const LatticePoint& by) {
    std::vector<Rational> b(s);
    for (std::size_t k = 0; k < 4; ++k) b[k] -= by[k];
    return b;
  };

  if (m[0] == 0) return base_sphere4(s, 0, 2, "gamma_13: side of the convex quadrilateral");

  if (m[0] <= rest) {
    LatticePoint mp = m;
    mp[0] -= 1;
    if (total % 2 == 0) mp[1] -= 1;
    PlanNode n = base_sphere4(shifted(mp), 0, 2, g13);
    n.assumptions.push_back(kSixPaths);
    for (const auto& [kl, count] : gamma4_pairs(mp)) n = surgery(PlanKind::GlueSlitCopies, std::move(n), kl.first, kl.second, count);
    return n;
  }
  if (total % 2 != 0) {
    LatticePoint mp = m;
    mp[0] -= 1;
    long long d = (m[0] - 1 - rest) / 2;
    PlanNode n = base_sphere4(shifted(mp), 0, 2, g13);
    n.assumptions.push_back(kSixPaths);
    n = surgery(PlanKind::GlueConeTrianglePath, std::move(n), 0, 2, d);
    n = surgery(PlanKind::GlueSlitCopies, std::move(n), 0, 1, m[1]);
    n = surgery(PlanKind::GlueSlitCopies, std::move(n), 0, 2, m[2]);
    return surgery(PlanKind::GlueSlitCopies, std::move(n), 0, 3, m[3]);
  }
  if (m[1] > 0) {
    LatticePoint mp = m;
    mp[0] -= 1;
    mp[1] -= 1;
    long long d = (m[0] - rest) / 2;
    PlanNode n = base_sphere4(shifted(mp), 0, 2, g13);
    n.assumptions.push_back(kSixPaths);
    n = surgery(PlanKind::GlueConeTrianglePath, std::move(n), 0, 2, d);
    n = surgery(PlanKind::GlueSlitCopies, std::move(n), 0, 1, m[1] - 1);
    n = surgery(PlanKind::GlueSlitCopies, std::move(n), 0, 2, m[2]);
    return surgery(PlanKind::GlueSlitCopies, std::move(n), 0, 3, m[3]);
  }
  long long d = (m[0] - 2) / 2;
  PlanNode n = base_sphere4(shifted({2 * d, 0, 0, 0}), 0, 1, "gamma_12: smooth geodesic shorter than pi");
  return surgery(PlanKind::GlueConeTrianglePath, std::move(n), 0, 1, d);
}

}  // namespace detail

/// Four cone points, none with integral angle (units of 2*pi).
inline PlanNode plan_sphere4(const std::vector<Rational>& theta) {
  if (theta.size() != 4) throw DomainError(ErrorCode::UnsupportedDimension, "expected four angles");
  detail::require_strict_angles(theta);
  for (std::size_t k = 0; k < 4; ++k)
    if (num::is_integral(theta[k]))
      throw DomainError(ErrorCode::InvalidArgument,
                        "angle " + std::to_string(k + 1) + " is integral; use the general planner");
  Permutation order = descending_order(theta);
  return make_relabel(detail::sorted_sphere4(reindex(theta, order)), inverse(order));
}

namespace detail {

inline PlanNode sphere3(const std::vector<Rational>& theta) {
  PlanNode n = make_double(plan_triangle(theta));
  n.certificate = certificate(0, 1, "side x1x2 of the triangle");
  return n;
}

/// Undoes one merge: the plan `merged` realizes the merge result, `before` is the
/// vector the step was applied to.
inline PlanNode split(const std::vector<Rational>& before, const MergeStep<Rational>& step, PlanNode merged,
                      const std::string& eta) {
  const std::size_t L = before.size();
  const Rational& ti = before[step.i];
  const Rational& tj = before[step.j];
  PlanNode tri;
  tri.kind = step.sign == MergeSign::Plus ? PlanKind::SumTriangle : PlanKind::DifferenceTriangle;
  tri.parameters = affine_vector({ti, tj});
  tri.symbol = eta;
  tri.constraints = {"|" + eta + "| < eps/2", "pi(1 - eps/2)-wide at x3", "(x1, x2)-angle-deformable"};
  if (step.sign == MergeSign::Minus) tri.constraints.push_back("theta_j not an integer");
  tri = finish(std::move(tri));

  PlanNode join;
  join.kind = PlanKind::ConePointJoin;
  join.indices = {L - 2, 2};
  join.symbol = eta;
  join.constraints = {"merged sphere eps-wide at its last cone point", "radius r in (0, pi) on one side, pi - r on the other"};
  join.assumptions = {"the merged sphere is angle-deformable and non-coaxial (deformability of non-coaxial metrics)"};
  join.children.push_back(std::move(merged));
  join.children.push_back(make_double(std::move(tri)));
  join = finish(std::move(join));

  Permutation perm(L);
  std::size_t next = 0;
  for (std::size_t k = 0; k < L; ++k) {
    if (k == step.i)
      perm[k] = L - 2;
    else if (k == step.j)
      perm[k] = L - 1;
    else
      perm[k] = next++;
  }
  PlanNode n;
  n.kind = PlanKind::Split;
  n.indices = {step.i, step.j};
  n.sign = step.sign;
  n.symbol = eta;
  n.permutation = std::move(perm);
  n.assumptions.push_back("holonomy contains the non-coaxial holonomy of the merged sphere");
  n.children.push_back(std::move(join));
  return finish(std::move(n));
}

}  // namespace detail

/// Any number n >= 3 of cone points (units of 2*pi), strictly admissible.
inline PlanNode plan_sphere_n(const std::vector<Rational>& theta) {
  const std::size_t n = theta.size();
  if (n < 3) throw DomainError(ErrorCode::UnsupportedDimension, "plans need at least three cone points");
  detail::require_strict_angles(theta);
  if (n == 3) return detail::sphere3(theta);
  bool integral = std::any_of(theta.begin(), theta.end(), [](const Rational& x) { return num::is_integral(x); });
  if (n == 4 && !integral) return plan_sphere4(theta);

  std::vector<Rational> delta(theta);
  for (auto& x : delta) x -= 1;
  ReductionChain<Rational> chain = reduce_chain(delta, n == 4 ? 3 : 4);
  if (chain.base.size() == 4 && detail::first_integral(chain.base)) {
    auto tail = reduce_chain(chain.base, 3);
    for (auto& s : tail.steps) chain.steps.push_back(std::move(s));
    chain.base = tail.base;
  }

  auto angles_of = [](std::vector<Rational> d) {
    for (auto& x : d) x += 1;
    return d;
  };
  std::vector<Rational> base = angles_of(chain.base);
  PlanNode plan = base.size() == 3 ? detail::sphere3(base) : plan_sphere4(base);

  std::vector<std::vector<Rational>> before{angles_of(chain.start)};
  for (std::size_t k = 0; k + 1 < chain.steps.size(); ++k) before.push_back(angles_of(chain.steps[k].result));
  for (std::size_t k = chain.steps.size(); k-- > 0;)
    plan = detail::split(before[k], chain.steps[k], std::move(plan), "eta_" + std::to_string(k + 1));
  return plan;
}

}  // namespace conemetric
