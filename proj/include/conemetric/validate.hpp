#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "conemetric/plan.hpp"
#include "conemetric/planner.hpp"

namespace conemetric {

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;  // one line per problem, prefixed with the node path
  AffineVector angles;              // recomputed at the root
  Affine area;
  std::size_t nodes = 0;
  std::size_t certificates = 0;
};

namespace detail {

inline std::string join_affine(const AffineVector& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
  return s + ")";
}

inline void check_certificate(const PlanNode& n, const std::string& where, ValidationReport& r) {
  const auto& c = *n.certificate;
  auto fail = [&](const std::string& what) {
    r.ok = false;
    r.issues.push_back(where + " certificate: " + what);
  };
  if (c.i == c.j || c.i >= n.angles.size() || c.j >= n.angles.size()) return fail("endpoints out of range");
  for (auto k : {c.i, c.j}) {
    if (!n.angles[k].is_constant() || num::is_integral(n.angles[k].constant))
      fail("angle at x" + std::to_string(k + 1) + " must be a non-integral constant");
  }
  bool has_length = false;
  for (const auto& s : c.constraints) has_length = has_length || s == kLengthNotMultipleOfPi;
  if (!has_length) fail("missing the length condition");
  if (c.geodesic.empty()) fail("no geodesic recorded");
  ++r.certificates;
}

inline void validate_node(const PlanNode& n, const std::string& where, ValidationReport& r) {
  ++r.nodes;
  for (std::size_t k = 0; k < n.children.size(); ++k)
    validate_node(n.children[k], where + "/" + std::to_string(k), r);
  const std::string here = where + " " + kind_name(n.kind);
  try {
    Bookkeeping b = compute_bookkeeping(n);
    if (b.unit != n.unit) {
      r.ok = false;
      r.issues.push_back(here + ": unit recorded as " + unit_name(n.unit) + ", rule gives " + unit_name(b.unit));
    }
    if (b.angles != n.angles) {
      r.ok = false;
      r.issues.push_back(here + ": angles recorded " + join_affine(n.angles) + ", rule gives " + join_affine(b.angles));
    }
    if (b.area != n.area) {
      r.ok = false;
      r.issues.push_back(here + ": area recorded " + n.area.str() + ", rule gives " + b.area.str());
    }
    Affine gb = gauss_bonnet(n.angles, n.unit);
    if (gb != n.area) {
      r.ok = false;
      r.issues.push_back(here + ": area " + n.area.str() + " differs from the Gauss-Bonnet value " + gb.str());
    }
  } catch (const DomainError& e) {
    r.ok = false;
    r.issues.push_back(here + ": " + e.what());
  }
  if (n.certificate) check_certificate(n, here, r);
}

}  // namespace detail

/// Re-derives every node's angles and area from its children, checks each node's side
/// conditions and Gauss-Bonnet, and compares the root with the target (units of 2*pi).
inline ValidationReport validate_plan(const PlanNode& plan, const std::vector<Rational>& target) {
  ValidationReport r;
  detail::validate_node(plan, "root", r);
  r.angles = plan.angles;
  r.area = plan.area;
  if (plan.unit != AngleUnit::TwoPi) {
    r.ok = false;
    r.issues.push_back("root: plan is not a closed sphere");
  }
  if (plan.angles != affine_vector(target)) {
    r.ok = false;
    r.issues.push_back("root: angles " + detail::join_affine(plan.angles) + " differ from target " +
                       detail::join_affine(affine_vector(target)));
  }
  Affine expect = sphere_area(affine_vector(target));
  if (plan.area != expect) {
    r.ok = false;
    r.issues.push_back("root: area " + plan.area.str() + " differs from 2(sum - n + 2) = " + expect.str());
  }
  if (r.certificates == 0) {
    r.ok = false;
    r.issues.push_back("root: no non-coaxiality certificate anywhere in the plan");
  }
  return r;
}

/// Indented one-node-per-line rendering.
inline std::string pretty_print(const PlanNode& root) {
  std::ostringstream out;
  visit(root, [&](const PlanNode& n, std::size_t depth) {
    std::string pad(2 * depth, ' ');
    out << pad << kind_name(n.kind) << "  [" << n.tag << "]\n";
    out << pad << "  angles " << detail::join_affine(n.angles) << " x " << (n.unit == AngleUnit::Pi ? "pi" : "2pi")
        << ", area " << n.area.str() << " pi\n";
    if (!n.numbers.empty()) {
      out << pad << "  params";
      for (const auto& [k, v] : n.numbers) out << " " << k << "=" << to_string(v);
      out << "\n";
    }
    if (!n.indices.empty()) {
      out << pad << "  points";
      for (auto i : n.indices) out << " x" << i + 1;
      out << "\n";
    }
    if (n.sign) out << pad << "  merge " << sign_name(*n.sign) << ", symbol " << n.symbol << "\n";
    for (const auto& c : n.constraints) out << pad << "  requires: " << c << "\n";
    for (const auto& a : n.assumptions) out << pad << "  assumes: " << a << "\n";
    if (n.certificate)
      out << pad << "  non-coaxial: x" << n.certificate->i + 1 << " - x" << n.certificate->j + 1 << " via "
          << n.certificate->geodesic << "\n";
  });
  return out.str();
}

}  // namespace conemetric
