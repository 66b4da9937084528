#pragma once

// Construction plans: a tree of symbolic building blocks (polygons, spheres and
// the surgeries joining them) with exact angle and area bookkeeping. Angles are in
// units of pi for polygons and 2*pi for spheres; areas are always in units of pi.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/catalog.hpp"
#include "conemetric/error.hpp"
#include "conemetric/merging.hpp"
#include "conemetric/permutation.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

/// constant + sum of coefficient * symbol. Symbols stand for the small free
/// parameters of a construction and never get numeric values.
struct Affine {
  Rational constant{0};
  std::map<std::string, Rational> terms;

  Affine() = default;
  Affine(Rational c) : constant(std::move(c)) {}
  Affine(long long c) : constant(c) {}
  static Affine symbol(const std::string& name) {
    Affine a;
    a.terms[name] = 1;
    return a;
  }

  bool is_constant() const { return terms.empty(); }

  Affine& operator+=(const Affine& o) {
    constant += o.constant;
    for (const auto& [k, v] : o.terms) add_term(k, v);
    return *this;
  }
  Affine& operator-=(const Affine& o) {
    constant -= o.constant;
    for (const auto& [k, v] : o.terms) add_term(k, -v);
    return *this;
  }
  Affine& operator*=(const Rational& s) {
    constant *= s;
    if (s == 0) terms.clear();
    for (auto& [k, v] : terms) v *= s;
    return *this;
  }
  friend Affine operator+(Affine a, const Affine& b) { return a += b; }
  friend Affine operator-(Affine a, const Affine& b) { return a -= b; }
  friend Affine operator*(Affine a, const Rational& s) { return a *= s; }
  friend Affine operator*(const Rational& s, Affine a) { return a *= s; }
  Affine operator-() const { return Affine{} - *this; }
  bool operator==(const Affine&) const = default;

  std::string str() const {
    std::string out = (constant != 0 || terms.empty()) ? to_string(constant) : "";
    for (const auto& [k, v] : terms) {
      bool neg = v < 0;
      Rational mag = neg ? Rational(-v) : v;
      std::string coeff = mag == 1 ? "" : to_string(mag) + "*";
      if (out.empty())
        out = (neg ? "-" : "") + coeff + k;
      else
        out += (neg ? " - " : " + ") + coeff + k;
    }
    return out;
  }

 private:
  void add_term(const std::string& k, const Rational& v) {
    Rational& slot = terms[k];
    slot += v;
    if (slot == 0) terms.erase(k);
  }
};

using AffineVector = std::vector<Affine>;

inline AffineVector affine_vector(const std::vector<Rational>& v) { return AffineVector(v.begin(), v.end()); }

inline Affine affine_sum(const AffineVector& v) {
  Affine s;
  for (const auto& x : v) s += x;
  return s;
}

/// Throws unless every entry is free of symbols.
inline std::vector<Rational> constants(const AffineVector& v) {
  std::vector<Rational> out;
  for (const auto& x : v) {
    if (!x.is_constant())
      throw DomainError(ErrorCode::ConstraintViolated, "angle '" + x.str() + "' still depends on a symbol");
    out.push_back(x.constant);
  }
  return out;
}

enum class PlanKind {
  ConvexTriangle,
  ComplementTriangle,
  ConeTriangle,
  OrdinaryBigon,
  ExceptionalBigon,
  EdgeGlue,
  ConvexQuad,
  CatalogQuad,
  CenterQuad,
  SumTriangle,
  DifferenceTriangle,
  Double,
  Relabel,
  CyclicCover,
  SporadicA,
  SporadicB,
  SporadicC,
  GlueSlitCopies,
  GlueConeTrianglePath,
  ConePointJoin,
  Split,
};

inline constexpr PlanKind kAllPlanKinds[] = {
    PlanKind::ConvexTriangle, PlanKind::ComplementTriangle, PlanKind::ConeTriangle,   PlanKind::OrdinaryBigon,
    PlanKind::ExceptionalBigon, PlanKind::EdgeGlue,         PlanKind::ConvexQuad,     PlanKind::CatalogQuad,
    PlanKind::CenterQuad,     PlanKind::SumTriangle,        PlanKind::DifferenceTriangle, PlanKind::Double,
    PlanKind::Relabel,        PlanKind::CyclicCover,        PlanKind::SporadicA,      PlanKind::SporadicB,
    PlanKind::SporadicC,      PlanKind::GlueSlitCopies,     PlanKind::GlueConeTrianglePath, PlanKind::ConePointJoin,
    PlanKind::Split,
};

inline const char* kind_name(PlanKind k) {
  switch (k) {
    case PlanKind::ConvexTriangle: return "convex_triangle";
    case PlanKind::ComplementTriangle: return "complement_triangle";
    case PlanKind::ConeTriangle: return "cone_triangle";
    case PlanKind::OrdinaryBigon: return "ordinary_bigon";
    case PlanKind::ExceptionalBigon: return "exceptional_bigon";
    case PlanKind::EdgeGlue: return "edge_glue";
    case PlanKind::ConvexQuad: return "convex_quad";
    case PlanKind::CatalogQuad: return "catalog_quad";
    case PlanKind::CenterQuad: return "center_quad";
    case PlanKind::SumTriangle: return "sum_triangle";
    case PlanKind::DifferenceTriangle: return "difference_triangle";
    case PlanKind::Double: return "double";
    case PlanKind::Relabel: return "relabel";
    case PlanKind::CyclicCover: return "cyclic_cover";
    case PlanKind::SporadicA: return "sporadic_a";
    case PlanKind::SporadicB: return "sporadic_b";
    case PlanKind::SporadicC: return "sporadic_c";
    case PlanKind::GlueSlitCopies: return "glue_slit_copies";
    case PlanKind::GlueConeTrianglePath: return "glue_cone_triangle_path";
    case PlanKind::ConePointJoin: return "cone_point_join";
    case PlanKind::Split: return "split";
  }
  return "unknown";
}

inline PlanKind parse_kind(const std::string& s) {
  for (auto k : kAllPlanKinds)
    if (s == kind_name(k)) return k;
  throw DomainError(ErrorCode::MalformedInput, "unknown plan node kind '" + s + "'");
}

/// Which construction a node stands for, in words.
inline const char* construction_tag(PlanKind k) {
  switch (k) {
    case PlanKind::ConvexTriangle: return "convex triangle";
    case PlanKind::ComplementTriangle: return "hemisphere minus a convex triangle";
    case PlanKind::ConeTriangle: return "triangle T(d, l, alpha) cut from a branched hemisphere";
    case PlanKind::OrdinaryBigon: return "ordinary bigon";
    case PlanKind::ExceptionalBigon: return "exceptional bigon B(d, l)";
    case PlanKind::EdgeGlue: return "polygons glued along edges";
    case PlanKind::ConvexQuad: return "convex quadrilateral";
    case PlanKind::CatalogQuad: return "catalog quadrilateral Q_i";
    case PlanKind::CenterQuad: return "two right-angled bigons glued along a segment";
    case PlanKind::SumTriangle: return "triangle close to an ordinary bigon";
    case PlanKind::DifferenceTriangle: return "triangle close to a double bigon";
    case PlanKind::Double: return "double of a polygon";
    case PlanKind::Relabel: return "relabeling of the marked points";
    case PlanKind::CyclicCover: return "cyclic branched cover";
    case PlanKind::SporadicA: return "sporadic sphere (1+a, 1-a, 1-a, 1-a): degree-3 cyclic cover";
    case PlanKind::SporadicB: return "sporadic sphere (2+b, b, b, b): degree-3 cyclic cover";
    case PlanKind::SporadicC: return "sporadic sphere (5/2, 1/2, 1/2, 1/2): two hemispheres";
    case PlanKind::GlueSlitCopies: return "surgery along a path: d slit spheres";
    case PlanKind::GlueConeTrianglePath: return "surgery along a short geodesic: adds 2d at one end";
    case PlanKind::ConePointJoin: return "surgery at a pair of cone points";
    case PlanKind::Split: return "splitting a cone point in two";
  }
  return "";
}

/// Smooth geodesic between two non-integral cone points, of length not in pi*Z.
struct NonCoaxialCertificate {
  std::size_t i = 0, j = 0;
  std::string geodesic;
  std::vector<std::string> constraints;
  bool operator==(const NonCoaxialCertificate&) const = default;
};

/// Vertex `index` of child `child`.
struct Contribution {
  std::size_t child = 0, index = 0;
  bool operator==(const Contribution&) const = default;
};

struct PlanNode {
  PlanKind kind = PlanKind::ConvexTriangle;
  std::string tag;

  // parameters, meaning depends on kind
  std::map<std::string, Rational> numbers;  // d, alpha, a, b, degree, row
  std::vector<std::size_t> indices;         // path ends, apex, branch points, join points
  Permutation permutation;                  // Relabel, CatalogQuad (dihedral part), Split
  std::optional<MergeSign> sign;            // Split
  std::string symbol;                       // eta for joins and near-degenerate triangles, lengths
  AffineVector parameters;                  // prescribed angles of leaf polygons
  std::vector<std::vector<Contribution>> groups;  // EdgeGlue: one per output vertex
  std::vector<std::vector<Contribution>> smooth;  // EdgeGlue: vertex pairs that become smooth

  std::vector<PlanNode> children;

  // derived
  AngleUnit unit = AngleUnit::Pi;
  AffineVector angles;
  Affine area;

  std::vector<std::string> constraints;
  std::vector<std::string> assumptions;
  std::optional<NonCoaxialCertificate> certificate;

  bool operator==(const PlanNode&) const = default;

  const Rational& number(const std::string& key) const {
    auto it = numbers.find(key);
    if (it == numbers.end())
      throw DomainError(ErrorCode::ConstraintViolated, std::string(kind_name(kind)) + " lacks parameter '" + key + "'");
    return it->second;
  }
};

struct Bookkeeping {
  AngleUnit unit = AngleUnit::Pi;
  AffineVector angles;
  Affine area;
};

/// Gauss-Bonnet area of a polygon with the given inner angles.
inline Affine polygon_area(const AffineVector& a) {
  return affine_sum(a) - Affine(static_cast<long long>(a.size()) - 2);
}

/// Gauss-Bonnet area of a sphere with the given cone angles.
inline Affine sphere_area(const AffineVector& a) {
  return (affine_sum(a) - Affine(static_cast<long long>(a.size()) - 2)) * Rational(2);
}

inline Affine gauss_bonnet(const AffineVector& a, AngleUnit unit) {
  return unit == AngleUnit::Pi ? polygon_area(a) : sphere_area(a);
}

namespace detail {

[[noreturn]] inline void violated(const PlanNode& n, const std::string& what) {
  throw DomainError(ErrorCode::ConstraintViolated, std::string(kind_name(n.kind)) + ": " + what);
}

inline void require(bool ok, const PlanNode& n, const std::string& what) {
  if (!ok) violated(n, what);
}

inline bool positive_integer(const Rational& r) { return num::is_integral(r) && r > 0; }

inline const Rational& constant_of(const Affine& a, const PlanNode& n) {
  require(a.is_constant(), n, "expected a symbol-free angle, got '" + a.str() + "'");
  return a.constant;
}

inline void require_children(const PlanNode& n, std::size_t count) {
  require(n.children.size() == count, n, "expected " + std::to_string(count) + " children");
}

inline void require_index(const PlanNode& n, std::size_t k, std::size_t size) {
  require(k < size, n, "index " + std::to_string(k + 1) + " out of range");
}

}  // namespace detail

/// Applies a node's rule to its children's recorded outputs. Throws ConstraintViolated
/// when a rule's side condition fails.
inline Bookkeeping compute_bookkeeping(const PlanNode& n) {
  using detail::require;
  Bookkeeping b;
  const auto child = [&](std::size_t k) -> const PlanNode& { return n.children.at(k); };

  switch (n.kind) {
    case PlanKind::ConvexTriangle: {
      detail::require_children(n, 0);
      require(n.parameters.size() == 3, n, "needs three angles");
      std::vector<Rational> t;
      for (const auto& a : n.parameters) t.push_back(detail::constant_of(a, n));
      for (const auto& x : t) require(x > 0 && x < 1, n, "angles must lie in (0, 1)");
      for (std::size_t k = 0; k < 3; ++k)
        require(Rational(1) - t[k] < (Rational(1) - t[(k + 1) % 3]) + (Rational(1) - t[(k + 2) % 3]), n,
                "(1 - theta) violates the triangle inequality");
      require(t[0] + t[1] + t[2] > 1, n, "angle sum must exceed 1");
      b.angles = n.parameters;
      b.area = polygon_area(b.angles);
      break;
    }
    case PlanKind::ComplementTriangle: {
      detail::require_children(n, 1);
      require(child(0).kind == PlanKind::ConvexTriangle, n, "child must be a convex triangle");
      require(n.indices.size() == 1 && n.indices[0] < 3, n, "needs an apex");
      const auto& c = child(0).angles;
      require(c.size() == 3, n, "child must be a triangle");
      for (std::size_t k = 0; k < 3; ++k)
        b.angles.push_back(k == n.indices[0] ? Affine(2) - c[k] : Affine(1) - c[k]);
      b.area = Affine(2) - child(0).area;
      break;
    }
    case PlanKind::ConeTriangle: {
      detail::require_children(n, 0);
      const Rational& d = n.number("d");
      const Rational& alpha = n.number("alpha");
      require(detail::positive_integer(d), n, "d must be a positive integer");
      require(alpha > 0 && alpha < 1, n, "alpha must lie in (0, 1)");
      b.angles = {Affine(Rational(2) * d), Affine(alpha), Affine(Rational(1) - alpha)};
      b.area = Affine(Rational(2) * d);
      break;
    }
    case PlanKind::OrdinaryBigon: {
      detail::require_children(n, 0);
      const Rational& alpha = n.number("alpha");
      require(alpha > 0, n, "alpha must be positive");
      b.angles = {Affine(alpha), Affine(alpha)};
      b.area = Affine(Rational(2) * alpha);
      break;
    }
    case PlanKind::ExceptionalBigon: {
      detail::require_children(n, 0);
      const Rational& d = n.number("d");
      require(detail::positive_integer(d), n, "d must be a positive integer");
      b.angles = {Affine(d), Affine(d)};
      b.area = Affine(Rational(2) * d);
      break;
    }
    case PlanKind::EdgeGlue: {
      require(n.children.size() >= 2, n, "needs at least two pieces");
      std::vector<std::vector<int>> used;
      for (const auto& c : n.children) {
        require(c.unit == AngleUnit::Pi, n, "pieces must be polygons");
        used.emplace_back(c.angles.size(), 0);
      }
      auto total = [&](const std::vector<Contribution>& g) {
        Affine s;
        for (const auto& c : g) {
          require(c.child < n.children.size() && c.index < n.children[c.child].angles.size(), n,
                  "contribution out of range");
          ++used[c.child][c.index];
          s += n.children[c.child].angles[c.index];
        }
        return s;
      };
      for (const auto& g : n.groups) {
        require(!g.empty(), n, "empty vertex group");
        b.angles.push_back(total(g));
      }
      for (const auto& g : n.smooth) require(total(g) == Affine(1), n, "a smooth boundary point must total angle 1");
      for (const auto& u : used)
        for (int k : u) require(k == 1, n, "every piece vertex must be used exactly once");
      b.area = Affine{};
      for (const auto& c : n.children) b.area += c.area;
      break;
    }
    case PlanKind::ConvexQuad: {
      detail::require_children(n, 0);
      require(n.parameters.size() == 4, n, "needs four angles");
      std::vector<Rational> t;
      for (const auto& a : n.parameters) t.push_back(detail::constant_of(a, n));
      require(in_convex_half_cube(t), n, "angles must be interior to the half cube at (1,1,1,1)");
      b.angles = n.parameters;
      b.area = polygon_area(b.angles);
      break;
    }
    case PlanKind::CatalogQuad: {
      detail::require_children(n, 1);
      require(child(0).kind == PlanKind::ConvexQuad, n, "child must be a convex quadrilateral");
      const Rational& row = n.number("row");
      require(num::is_integral(row) && row >= 1 && row <= 10, n, "row must be 1..10");
      require(in_dihedral8(n.permutation), n, "the vertex permutation must be a symmetry of the quadrilateral");
      auto image = quad_catalog()[num::to_ll(boost::multiprecision::numerator(row))].apply(
          constants(child(0).angles));
      b.angles = affine_vector(reindex(image, n.permutation));
      b.area = polygon_area(b.angles);
      break;
    }
    case PlanKind::CenterQuad: {
      detail::require_children(n, 2);
      for (const auto& c : n.children)
        require(c.kind == PlanKind::OrdinaryBigon && c.number("alpha") == Rational(1, 2), n,
                "pieces must be ordinary bigons of angle 1/2");
      b.angles = {child(0).angles[0] + Affine(1), child(0).angles[1], child(1).angles[0] + Affine(1),
                  child(1).angles[1]};
      b.area = child(0).area + child(1).area;
      break;
    }
    case PlanKind::SumTriangle:
    case PlanKind::DifferenceTriangle: {
      detail::require_children(n, 0);
      require(n.parameters.size() == 2, n, "needs the two prescribed angles");
      require(!n.symbol.empty(), n, "needs a symbol for the free parameter");
      const Rational& ti = detail::constant_of(n.parameters[0], n);
      const Rational& tj = detail::constant_of(n.parameters[1], n);
      require(ti > 0 && tj > 0, n, "angles must be positive");
      Rational third = n.kind == PlanKind::SumTriangle ? Rational(ti + tj - 1) : Rational(ti - tj - 1);
      require(third > 0, n, "the third angle must be positive");
      if (n.kind == PlanKind::DifferenceTriangle) require(!num::is_integral(tj), n, "second angle must not be an integer");
      b.angles = {Affine(ti), Affine(tj), Affine(third) + Affine::symbol(n.symbol)};
      b.area = polygon_area(b.angles);
      break;
    }
    case PlanKind::Double: {
      detail::require_children(n, 1);
      require(child(0).unit == AngleUnit::Pi, n, "only polygons can be doubled");
      b.angles = child(0).angles;
      b.area = child(0).area * Rational(2);
      b.unit = AngleUnit::TwoPi;
      return b;
    }
    case PlanKind::Relabel: {
      detail::require_children(n, 1);
      const auto& c = child(0);
      require(is_permutation_of(n.permutation, c.angles.size()), n, "not a permutation");
      if (c.unit == AngleUnit::Pi && c.angles.size() == 4)
        require(in_dihedral8(n.permutation), n, "a quadrilateral can only be relabeled by its symmetries");
      b.angles = reindex(c.angles, n.permutation);
      b.area = c.area;
      b.unit = c.unit;
      return b;
    }
    case PlanKind::CyclicCover: {
      detail::require_children(n, 1);
      const auto& c = child(0);
      require(c.unit == AngleUnit::TwoPi, n, "covers are taken of spheres");
      const Rational& k = n.number("degree");
      require(num::is_integral(k) && k >= 2, n, "degree must be an integer >= 2");
      require(n.indices.size() == 2 && n.indices[0] != n.indices[1], n,
              "a cyclic cover of a sphere with genus 0 branches over exactly two points");
      for (auto i : n.indices) detail::require_index(n, i, c.angles.size());
      long long deg = num::to_ll(boost::multiprecision::numerator(k));
      for (std::size_t p = 0; p < c.angles.size(); ++p) {
        bool branch = std::find(n.indices.begin(), n.indices.end(), p) != n.indices.end();
        if (branch) {
          Affine a = c.angles[p] * k;
          if (a != Affine(1)) b.angles.push_back(a);
        } else {
          for (long long r = 0; r < deg; ++r) b.angles.push_back(c.angles[p]);
        }
      }
      b.area = c.area * k;
      b.unit = AngleUnit::TwoPi;
      return b;
    }
    case PlanKind::SporadicA:
    case PlanKind::SporadicB: {
      detail::require_children(n, 1);
      require(child(0).kind == PlanKind::CyclicCover, n, "child must be a cyclic cover");
      bool is_a = n.kind == PlanKind::SporadicA;
      const Rational& a = n.number(is_a ? "a" : "b");
      if (is_a)
        require(a > 0 && a < 1, n, "a must lie in (0, 1)");
      else
        require(a > 0 && a < Rational(1, 2), n, "b must lie in (0, 1/2)");
      Rational big = is_a ? Rational(1 + a) : Rational(2 + a);
      Rational small = is_a ? Rational(1 - a) : a;
      AffineVector expect{Affine(big), Affine(small), Affine(small), Affine(small)};
      require(child(0).angles == expect, n, "cover does not produce the sporadic angles");
      b.angles = child(0).angles;
      b.area = child(0).area;
      b.unit = AngleUnit::TwoPi;
      return b;
    }
    case PlanKind::SporadicC: {
      detail::require_children(n, 0);
      const Rational h(1, 2);
      b.angles = {Affine(Rational(5, 2)), Affine(h), Affine(h), Affine(h)};
      b.area = Affine(4);  // two hemispheres
      b.unit = AngleUnit::TwoPi;
      return b;
    }
    case PlanKind::GlueSlitCopies:
    case PlanKind::GlueConeTrianglePath: {
      detail::require_children(n, 1);
      const auto& c = child(0);
      require(c.unit == AngleUnit::TwoPi, n, "surgery is performed on spheres");
      require(n.indices.size() == 2 && n.indices[0] != n.indices[1], n, "needs a path between two points");
      for (auto i : n.indices) detail::require_index(n, i, c.angles.size());
      const Rational& d = n.number("d");
      require(detail::positive_integer(d), n, "d must be a positive integer");
      b.angles = c.angles;
      if (n.kind == PlanKind::GlueSlitCopies) {
        b.angles[n.indices[0]] += Affine(d);
        b.angles[n.indices[1]] += Affine(d);
      } else {
        require(detail::constant_of(c.angles[n.indices[1]], n) < 1, n,
                "the far end of the path must have angle below 1");
        b.angles[n.indices[0]] += Affine(Rational(2) * d);
      }
      b.area = c.area + Affine(Rational(4) * d);
      b.unit = AngleUnit::TwoPi;
      return b;
    }
    case PlanKind::ConePointJoin: {
      detail::require_children(n, 2);
      const auto& s = child(0);
      const auto& t = child(1);
      require(s.unit == AngleUnit::TwoPi && t.unit == AngleUnit::TwoPi, n, "joins two spheres");
      require(n.indices.size() == 2, n, "needs one cone point on each side");
      detail::require_index(n, n.indices[0], s.angles.size());
      detail::require_index(n, n.indices[1], t.angles.size());
      require(!n.symbol.empty(), n, "needs the deformation symbol");
      Affine eta = Affine::symbol(n.symbol);
      Affine alpha = s.angles[n.indices[0]] + eta;
      require(alpha == t.angles[n.indices[1]], n, "cone angles at the joined points differ");
      for (std::size_t k = 0; k < s.angles.size(); ++k)
        if (k != n.indices[0]) b.angles.push_back(s.angles[k]);
      for (std::size_t k = 0; k < t.angles.size(); ++k)
        if (k != n.indices[1]) b.angles.push_back(t.angles[k]);
      // The deformed S' gains 2*eta of area; the two removed disks together have area 4*alpha.
      b.area = s.area + eta * Rational(2) + t.area - alpha * Rational(4);
      b.unit = AngleUnit::TwoPi;
      return b;
    }
    case PlanKind::Split: {
      detail::require_children(n, 1);
      const auto& j = child(0);
      require(j.kind == PlanKind::ConePointJoin, n, "child must be a cone point join");
      require(n.sign.has_value(), n, "needs a merge sign");
      require(is_permutation_of(n.permutation, j.angles.size()), n, "not a permutation");
      const auto& tri = j.children.at(1).children.at(0);
      PlanKind want = *n.sign == MergeSign::Plus ? PlanKind::SumTriangle : PlanKind::DifferenceTriangle;
      require(tri.kind == want, n, "triangle kind does not match the merge sign");
      b.angles = reindex(j.angles, n.permutation);
      b.area = j.area;
      b.unit = AngleUnit::TwoPi;
      return b;
    }
  }
  b.unit = AngleUnit::Pi;
  return b;
}

/// Fills the derived fields of a freshly assembled node.
inline PlanNode finish(PlanNode n) {
  auto b = compute_bookkeeping(n);
  n.unit = b.unit;
  n.angles = std::move(b.angles);
  n.area = std::move(b.area);
  if (n.tag.empty()) n.tag = construction_tag(n.kind);
  return n;
}

inline PlanNode make_double(PlanNode polygon) {
  PlanNode n;
  n.kind = PlanKind::Double;
  n.children.push_back(std::move(polygon));
  return finish(std::move(n));
}

/// Returns the child unchanged for the identity permutation.
inline PlanNode make_relabel(PlanNode child, const Permutation& p) {
  if (is_identity(p)) return child;
  PlanNode n;
  n.kind = PlanKind::Relabel;
  n.permutation = p;
  n.certificate = child.certificate;
  if (n.certificate) {
    // follow the certified points to their new positions
    auto inv = inverse(p);
    n.certificate->i = inv[n.certificate->i];
    n.certificate->j = inv[n.certificate->j];
  }
  n.children.push_back(std::move(child));
  return finish(std::move(n));
}

template <class F>
void visit(const PlanNode& n, F&& f, std::size_t depth = 0) {
  f(n, depth);
  for (const auto& c : n.children) visit(c, f, depth + 1);
}

inline std::size_t count_nodes(const PlanNode& n) {
  std::size_t k = 0;
  visit(n, [&](const PlanNode&, std::size_t) { ++k; });
  return k;
}

inline bool contains_kind(const PlanNode& n, PlanKind kind) {
  bool found = false;
  visit(n, [&](const PlanNode& m, std::size_t) { found = found || m.kind == kind; });
  return found;
}

}  // namespace conemetric
