#pragma once

// JSON encodings. Exact rationals travel as "p/q" strings, doubles as numbers, indices
// and permutations one-based. Every encoder has a decoder that restores the value exactly.

#include <json.hpp>

#include <string>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/cubes.hpp"
#include "conemetric/error.hpp"
#include "conemetric/holonomy.hpp"
#include "conemetric/merging.hpp"
#include "conemetric/plan.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

using Json = nlohmann::json;

namespace jsonio {

[[noreturn]] inline void malformed(const std::string& what) { throw DomainError(ErrorCode::MalformedInput, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
Json scalar(const T& x) {
  if constexpr (is_exact_v<T>)
    return to_string(x);
  else
    return x;
}

// Strings parse exactly; numbers go through their shortest round-trip decimal text, so
// 0.1 reads as 1/10 rather than the nearest double.
template <class T>
T parse_scalar(const Json& j) {
  if constexpr (is_exact_v<T>) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
  } else {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return num::to_double(parse_rational(j.get<std::string>()));
  }
  malformed("expected a number or a \"p/q\" string, got " + j.dump());
}

template <class T>
Json scalars(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar(x));
  return out;
}

template <class T>
std::vector<T> parse_scalars(const Json& j) {
  if (!j.is_array()) malformed("expected an array, got " + j.dump());
  std::vector<T> out;
  for (const auto& x : j) out.push_back(parse_scalar<T>(x));
  return out;
}

inline Json one_based(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto k : v) out.push_back(k + 1);
  return out;
}

inline std::size_t parse_index(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 1) malformed("expected a one-based index, got " + j.dump());
  return j.get<std::size_t>() - 1;
}

inline std::vector<std::size_t> parse_indices(const Json& j) {
  if (!j.is_array()) malformed("expected an index array");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(parse_index(x));
  return out;
}

inline LatticePoint parse_lattice(const Json& j) {
  if (!j.is_array()) malformed("expected an integer array");
  LatticePoint out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) malformed("expected an integer, got " + x.dump());
    out.push_back(x.get<long long>());
  }
  return out;
}

template <class E, std::size_t N>
E parse_enum(const Json& j, const E (&all)[N], const char* (*name)(E), const char* what) {
  if (j.is_string())
    for (E e : all)
      if (j.get<std::string>() == name(e)) return e;
  malformed(std::string("unknown ") + what + " " + j.dump());
}

inline constexpr Status kStatuses[] = {Status::PositivityViolated, Status::HolonomyViolated, Status::HolonomyBoundary,
                                       Status::StrictInterior};
inline constexpr MergeSign kSigns[] = {MergeSign::Plus, MergeSign::Minus};
inline constexpr AngleUnit kUnits[] = {AngleUnit::Pi, AngleUnit::TwoPi};

inline AngleUnit parse_unit(const Json& j) { return parse_enum(j, kUnits, unit_name, "unit"); }

}  // namespace jsonio

// ---- angles

template <class T>
Json to_json(const AdmissibilityReport<T>& r) {
  return {{"status", status_name(r.status)},
          {"positivity_ok", r.positivity_ok},
          {"distance", jsonio::scalar(r.holonomy_distance)},
          {"witness", r.witness}};
}

template <class T>
AdmissibilityReport<T> report_from_json(const Json& j) {
  AdmissibilityReport<T> r;
  r.status = jsonio::parse_enum(jsonio::field(j, "status"), jsonio::kStatuses, status_name, "status");
  r.positivity_ok = jsonio::field(j, "positivity_ok").get<bool>();
  r.holonomy_distance = jsonio::parse_scalar<T>(jsonio::field(j, "distance"));
  r.witness = jsonio::parse_lattice(jsonio::field(j, "witness"));
  return r;
}

// ---- merging

template <class T>
Json to_json(const MergeStep<T>& s) {
  Json j = {{"i", s.i + 1}, {"j", s.j + 1}, {"sign", sign_name(s.sign)}, {"result", jsonio::scalars(s.result)},
            {"rule", s.rule}};
  if (s.certificate)
    j["certificate"] = {{"delta_i", jsonio::scalar(s.certificate->delta_i)},
                        {"delta_j", jsonio::scalar(s.certificate->delta_j)},
                        {"difference", jsonio::scalar(s.certificate->difference)}};
  return j;
}

template <class T>
MergeStep<T> step_from_json(const Json& j) {
  using namespace jsonio;
  MergeStep<T> s;
  s.i = parse_index(field(j, "i"));
  s.j = parse_index(field(j, "j"));
  s.sign = parse_enum(field(j, "sign"), kSigns, sign_name, "merge sign");
  s.result = parse_scalars<T>(field(j, "result"));
  s.rule = field(j, "rule").get<std::string>();
  if (j.contains("certificate")) {
    const auto& c = j.at("certificate");
    s.certificate = NonIntegralityCertificate<T>{parse_scalar<T>(field(c, "delta_i")),
                                                 parse_scalar<T>(field(c, "delta_j")),
                                                 parse_scalar<T>(field(c, "difference"))};
  }
  return s;
}

/// Each step also lists, for the two merged entries, the original coordinates they
/// stand for ("merges": one-based labels of the starting vector).
template <class T>
Json to_json(const ReductionChain<T>& c) {
  std::vector<std::vector<std::size_t>> labels;
  for (std::size_t k = 0; k < c.start.size(); ++k) labels.push_back({k + 1});
  Json steps = Json::array();
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const auto& s = c.steps[k];
    Json js = to_json(s);
    js["merges"] = {labels[s.i], labels[s.j]};
    js["order"] = jsonio::one_based(c.permutation_log[k]);
    js["report"] = to_json(c.reports[k]);
    std::vector<std::vector<std::size_t>> next;
    for (std::size_t q = 0; q < labels.size(); ++q)
      if (q != s.i && q != s.j) next.push_back(labels[q]);
    auto merged = labels[s.i];
    merged.insert(merged.end(), labels[s.j].begin(), labels[s.j].end());
    next.push_back(std::move(merged));
    labels = std::move(next);
    steps.push_back(std::move(js));
  }
  return {{"start", jsonio::scalars(c.start)}, {"steps", steps}, {"base", jsonio::scalars(c.base)}};
}

template <class T>
ReductionChain<T> chain_from_json(const Json& j) {
  using namespace jsonio;
  ReductionChain<T> c;
  c.start = parse_scalars<T>(field(j, "start"));
  c.base = parse_scalars<T>(field(j, "base"));
  for (const auto& js : field(j, "steps")) {
    c.steps.push_back(step_from_json<T>(js));
    c.permutation_log.push_back(parse_indices(field(js, "order")));
    c.reports.push_back(report_from_json<T>(field(js, "report")));
  }
  return c;
}

// ---- holonomy

inline Json to_json(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

inline Quaternion quaternion_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) jsonio::malformed("a quaternion is four numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline Json su2_json(const Quaternion& q) {
  Json m = Json::array();
  for (const auto& row : to_su2(q)) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back({c.real(), c.imag()});
    m.push_back(r);
  }
  return m;
}

inline Json to_json(const BrokenGeodesic& g) {
  Json v = Json::array();
  for (const auto& q : g.vertices) v.push_back(to_json(q));
  return {{"vertices", v},           {"target_lengths", g.target_lengths}, {"side_lengths", g.side_lengths},
          {"diagonals", g.diagonals}, {"seed", g.seed},                     {"attempts", g.attempts}};
}

inline BrokenGeodesic geodesic_from_json(const Json& j) {
  using jsonio::field;
  BrokenGeodesic g;
  for (const auto& q : field(j, "vertices")) g.vertices.push_back(quaternion_from_json(q));
  g.target_lengths = field(j, "target_lengths").get<std::vector<double>>();
  g.side_lengths = field(j, "side_lengths").get<std::vector<double>>();
  g.diagonals = field(j, "diagonals").get<std::vector<double>>();
  g.seed = field(j, "seed").get<std::uint64_t>();
  g.attempts = field(j, "attempts").get<int>();
  return g;
}

inline Json to_json(const StandardMatrixSet& ms) {
  Json mats = Json::array();
  for (const auto& q : ms.matrices) mats.push_back({{"quaternion", to_json(q)}, {"su2", su2_json(q)}});
  return {{"matrices", mats},
          {"target_angles", ms.target_angles},
          {"side_lengths", ms.side_lengths},
          {"closure_residual", ms.closure_residual},
          {"max_trace_error", ms.max_trace_error},
          {"max_side_error", ms.max_side_error},
          {"coaxial", ms.coaxial},
          {"gram_rank", ms.gram_rank},
          {"singular_values", ms.singular_values}};
}

inline StandardMatrixSet matrices_from_json(const Json& j) {
  using jsonio::field;
  StandardMatrixSet ms;
  for (const auto& m : field(j, "matrices")) ms.matrices.push_back(quaternion_from_json(field(m, "quaternion")));
  ms.target_angles = field(j, "target_angles").get<std::vector<double>>();
  ms.side_lengths = field(j, "side_lengths").get<std::vector<double>>();
  ms.closure_residual = field(j, "closure_residual").get<double>();
  ms.max_trace_error = field(j, "max_trace_error").get<double>();
  ms.max_side_error = field(j, "max_side_error").get<double>();
  ms.coaxial = field(j, "coaxial").get<bool>();
  ms.gram_rank = field(j, "gram_rank").get<int>();
  ms.singular_values = field(j, "singular_values").get<std::vector<double>>();
  return ms;
}

// ---- cubes

template <class T>
Json to_json(const PointClassification<T>& c) {
  Json j = {{"kind", point_kind_name(c.kind)}, {"center", jsonio::scalars(c.center)}};
  if (c.projection) {
    j["t"] = jsonio::scalar(c.projection->t);
    j["projection"] = jsonio::scalars(c.projection->point);
  }
  if (c.kind == PointKind::Simplicial) j["vertex"] = c.vertex;
  if (c.kind == PointKind::NonSimplicial) j["integral_index"] = c.integral_index + 1;
  return j;
}

template <class T>
Json to_json(const CoverageResult<T>& r) {
  Json j = {{"covered", r.covered}};
  if (r.covered) {
    j["vertex"] = r.vertex;
    j["permutation"] = jsonio::one_based(r.permutation);
  }
  return j;
}

template <class T>
CoverageResult<T> coverage_from_json(const Json& j) {
  CoverageResult<T> r;
  r.covered = jsonio::field(j, "covered").get<bool>();
  if (r.covered) {
    r.vertex = jsonio::parse_lattice(jsonio::field(j, "vertex"));
    r.permutation = jsonio::parse_indices(jsonio::field(j, "permutation"));
  }
  return r;
}

template <class T>
Json to_json(const InteriorPath<T>& p) {
  Json v = Json::array();
  for (const auto& x : p.vertices) v.push_back(jsonio::scalars(x));
  return {{"vertices", v},
          {"min_breakpoint_distance", jsonio::scalar(p.min_breakpoint_distance)},
          {"min_sample_distance", jsonio::scalar(p.min_sample_distance)},
          {"positivity_violations", jsonio::one_based(p.positivity_violations)}};
}

template <class T>
InteriorPath<T> path_from_json(const Json& j) {
  using namespace jsonio;
  InteriorPath<T> p;
  for (const auto& x : field(j, "vertices")) p.vertices.push_back(parse_scalars<T>(x));
  p.min_breakpoint_distance = parse_scalar<T>(field(j, "min_breakpoint_distance"));
  p.min_sample_distance = parse_scalar<T>(field(j, "min_sample_distance"));
  p.positivity_violations = parse_indices(field(j, "positivity_violations"));
  return p;
}

// ---- plans

inline Json to_json(const Affine& a) {
  if (a.is_constant()) return to_string(a.constant);
  Json terms = Json::object();
  for (const auto& [k, v] : a.terms) terms[k] = to_string(v);
  return {{"constant", to_string(a.constant)}, {"terms", terms}};
}

inline Affine affine_from_json(const Json& j) {
  if (j.is_string() || j.is_number()) return Affine(jsonio::parse_scalar<Rational>(j));
  Affine a(jsonio::parse_scalar<Rational>(jsonio::field(j, "constant")));
  for (const auto& [k, v] : jsonio::field(j, "terms").items()) a += Affine::symbol(k) * jsonio::parse_scalar<Rational>(v);
  return a;
}

inline Json affines(const AffineVector& v) {
  Json out = Json::array();
  for (const auto& a : v) out.push_back(to_json(a));
  return out;
}

inline AffineVector affines_from_json(const Json& j) {
  if (!j.is_array()) jsonio::malformed("expected an array of angles");
  AffineVector out;
  for (const auto& x : j) out.push_back(affine_from_json(x));
  return out;
}

inline Json contributions(const std::vector<std::vector<Contribution>>& groups) {
  Json out = Json::array();
  for (const auto& g : groups) {
    Json jg = Json::array();
    for (const auto& c : g) jg.push_back({c.child + 1, c.index + 1});
    out.push_back(jg);
  }
  return out;
}

inline std::vector<std::vector<Contribution>> contributions_from_json(const Json& j) {
  std::vector<std::vector<Contribution>> out;
  for (const auto& jg : j) {
    auto& g = out.emplace_back();
    for (const auto& c : jg) {
      if (!c.is_array() || c.size() != 2) jsonio::malformed("a contribution is [child, vertex]");
      g.push_back({jsonio::parse_index(c[0]), jsonio::parse_index(c[1])});
    }
  }
  return out;
}

inline Json to_json(const PlanNode& n) {
  Json j = {{"kind", kind_name(n.kind)},
            {"tag", n.tag},
            {"unit", unit_name(n.unit)},
            {"angles", affines(n.angles)},
            {"area", to_json(n.area)}};
  if (!n.numbers.empty()) {
    Json nums = Json::object();
    for (const auto& [k, v] : n.numbers) nums[k] = to_string(v);
    j["numbers"] = nums;
  }
  if (!n.indices.empty()) j["indices"] = jsonio::one_based(n.indices);
  if (!n.permutation.empty()) j["permutation"] = jsonio::one_based(n.permutation);
  if (n.sign) j["sign"] = sign_name(*n.sign);
  if (!n.symbol.empty()) j["symbol"] = n.symbol;
  if (!n.parameters.empty()) j["parameters"] = affines(n.parameters);
  if (!n.groups.empty()) j["groups"] = contributions(n.groups);
  if (!n.smooth.empty()) j["smooth"] = contributions(n.smooth);
  if (!n.constraints.empty()) j["constraints"] = n.constraints;
  if (!n.assumptions.empty()) j["assumptions"] = n.assumptions;
  if (n.certificate)
    j["certificate"] = {{"i", n.certificate->i + 1},
                        {"j", n.certificate->j + 1},
                        {"geodesic", n.certificate->geodesic},
                        {"constraints", n.certificate->constraints}};
  if (!n.children.empty()) {
    Json kids = Json::array();
    for (const auto& c : n.children) kids.push_back(to_json(c));
    j["children"] = kids;
  }
  return j;
}

inline PlanNode plan_from_json(const Json& j) {
  using namespace jsonio;
  PlanNode n;
  n.kind = parse_kind(field(j, "kind").get<std::string>());
  n.tag = field(j, "tag").get<std::string>();
  n.unit = parse_unit(field(j, "unit"));
  n.angles = affines_from_json(field(j, "angles"));
  n.area = affine_from_json(field(j, "area"));
  if (j.contains("numbers"))
    for (const auto& [k, v] : j.at("numbers").items()) n.numbers[k] = parse_scalar<Rational>(v);
  if (j.contains("indices")) n.indices = parse_indices(j.at("indices"));
  if (j.contains("permutation")) n.permutation = parse_indices(j.at("permutation"));
  if (j.contains("sign")) n.sign = parse_enum(j.at("sign"), kSigns, sign_name, "merge sign");
  if (j.contains("symbol")) n.symbol = j.at("symbol").get<std::string>();
  if (j.contains("parameters")) n.parameters = affines_from_json(j.at("parameters"));
  if (j.contains("groups")) n.groups = contributions_from_json(j.at("groups"));
  if (j.contains("smooth")) n.smooth = contributions_from_json(j.at("smooth"));
  if (j.contains("constraints")) n.constraints = j.at("constraints").get<std::vector<std::string>>();
  if (j.contains("assumptions")) n.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  if (j.contains("certificate")) {
    const auto& c = j.at("certificate");
    n.certificate = NonCoaxialCertificate{parse_index(field(c, "i")), parse_index(field(c, "j")),
                                          field(c, "geodesic").get<std::string>(),
                                          field(c, "constraints").get<std::vector<std::string>>()};
  }
  if (j.contains("children"))
    for (const auto& c : j.at("children")) n.children.push_back(plan_from_json(c));
  return n;
}

}  // namespace conemetric
