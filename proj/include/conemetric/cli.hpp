#pragma once

// Request/response layer behind the command-line tool. A request is
//   {"command": ..., "input": <angles or pair of angle vectors>, "options": {...}}
// and the response echoes command, input and the fully resolved options, then carries
// either "result" or "error". Exit codes: 0 ok, 1 domain error, 2 usage or malformed input.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/cubes.hpp"
#include "conemetric/error.hpp"
#include "conemetric/holonomy.hpp"
#include "conemetric/json.hpp"
#include "conemetric/merging.hpp"
#include "conemetric/planner.hpp"
#include "conemetric/validate.hpp"

namespace conemetric::cli {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"check", "reduce", "realize", "plan", "cover", "path"};
  return c;
}

struct Options {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::optional<AngleUnit> unit;  // unset: the command's own unit
  bool pretty = false;
  std::size_t stop_at = 4;
  std::string cube;               // cover: one of the coverage tables, empty for all
  std::string group = "s4";       // cover: s4 | d8
  bool exact = true;              // false: bare numbers become doubles with tolerance semantics
};

struct Response {
  Json body;
  int exit_code = 0;
  std::string text;  // pretty rendering, filled only when requested
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Unit the command works in: quadrilateral angles for cover, sphere angles otherwise.
inline AngleUnit native_unit(const std::string& command) { return command == "cover" ? AngleUnit::Pi : AngleUnit::TwoPi; }

inline Json options_json(const Options& o, const std::string& command) {
  return {{"tolerance", o.tolerance},
          {"seed", o.seed},
          {"unit", unit_name(o.unit.value_or(native_unit(command)))},
          {"format", o.pretty ? "pretty" : "json"},
          {"stop_at", o.stop_at},
          {"cube", o.cube.empty() ? Json("all") : Json(o.cube)},
          {"group", o.group},
          {"numbers", o.exact ? "exact" : "float"}};
}

template <class T>
std::vector<T> read_angles(const Json& j, const Options& o, const std::string& command) {
  if (!j.is_array()) throw UsageError("input must be a JSON array of angles");
  auto v = jsonio::parse_scalars<T>(j);
  if (v.empty()) throw UsageError("input angle vector is empty");
  AngleUnit given = o.unit.value_or(native_unit(command));
  if (given != native_unit(command))
    for (auto& x : v) x = given == AngleUnit::Pi ? T(x / T(2)) : T(x * T(2));
  return v;
}

template <class T>
std::vector<T> defect_of(const std::vector<T>& theta) {
  return AngleVector<T>(theta).defect();
}

template <class T>
std::vector<T> angles_of(std::vector<T> delta) {
  for (auto& x : delta) x += T(1);
  return delta;
}

template <class T>
Json run_check(const Json& input, const Options& o, std::string&) {
  auto theta = read_angles<T>(input, o, "check");
  auto report = classify(AngleVector<T>(theta), o.tolerance);
  Json r = to_json(report);
  r["angles"] = jsonio::scalars(theta);
  r["defect"] = jsonio::scalars(defect_of(theta));
  r["reduced_defect"] = jsonio::scalars(reduce(defect_of(theta)));
  return r;
}

template <class T>
Json run_reduce(const Json& input, const Options& o, std::string&) {
  auto theta = read_angles<T>(input, o, "reduce");
  auto chain = reduce_chain(defect_of(theta), o.stop_at);
  Json r = to_json(chain);
  r["base_angles"] = jsonio::scalars(angles_of(chain.base));
  return r;
}

template <class T>
Json run_realize(const Json& input, const Options& o, std::string&) {
  AngleVector<T> theta(read_angles<T>(input, o, "realize"));
  auto g = build_geodesic(theta, o.seed);
  auto ms = matrices_from_geodesic(g, theta);
  return {{"geodesic", to_json(g)}, {"matrices", to_json(ms)}, {"axes_parallel", coaxiality_test(ms, o.tolerance)}};
}

inline Json run_plan(const Json& input, const Options& o, std::string& text) {
  if (!o.exact) throw UsageError("plan needs exact input; drop --float");
  auto theta = read_angles<Rational>(input, o, "plan");
  PlanNode plan = plan_sphere_n(theta);
  auto report = validate_plan(plan, theta);
  std::vector<std::string> kinds;
  visit(plan, [&](const PlanNode& n, std::size_t) {
    std::string k = kind_name(n.kind);
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  });
  if (o.pretty) text = pretty_print(plan);
  return {{"plan", to_json(plan)},
          {"kinds", kinds},
          {"validation",
           {{"ok", report.ok}, {"issues", report.issues}, {"nodes", report.nodes}, {"certificates", report.certificates}}}};
}

template <class T>
Json run_cover(const Json& input, const Options& o, std::string&) {
  auto theta = read_angles<T>(input, o, "cover");
  if (theta.size() != 4) throw DomainError(ErrorCode::UnsupportedDimension, "cover takes four quadrilateral angles");
  PermutationGroup group;
  if (o.group == "s4")
    group = PermutationGroup::S4;
  else if (o.group == "d8")
    group = PermutationGroup::D8;
  else
    throw UsageError("group must be s4 or d8");
  Json tables = Json::array();
  bool covered = false;
  for (const auto& t : coverage_tables()) {
    if (!o.cube.empty() && t.name != o.cube) continue;
    std::vector<T> center;
    if constexpr (is_exact_v<T>)
      center = t.center;
    else
      center = to_doubles(t.center);
    Json jt = {{"cube", t.name}, {"center", jsonio::scalars(t.center)}, {"vertices", t.vertices}};
    TruncatedCube<T> cube(center);
    jt["contains"] = cube.contains(theta);
    if (cube.contains(theta)) {
      auto res = coverage_check(theta, center, t.vertices, group);
      jt.update(to_json(res));
      covered = covered || res.covered;
    }
    tables.push_back(std::move(jt));
  }
  if (tables.empty()) throw UsageError("unknown cube '" + o.cube + "'");
  return {{"covered", covered}, {"cubes", tables}};
}

template <class T>
Json run_path(const Json& input, const Options& o, std::string&) {
  if (!input.is_array() || input.size() != 2) throw UsageError("path takes a pair of angle vectors");
  auto a = read_angles<T>(input[0], o, "path");
  auto b = read_angles<T>(input[1], o, "path");
  auto p = interior_path(defect_of(a), defect_of(b));
  Json r = to_json(p);
  r["space"] = "defect";
  return r;
}

template <class T>
Json dispatch(const std::string& command, const Json& input, const Options& o, std::string& text) {
  if (command == "check") return run_check<T>(input, o, text);
  if (command == "reduce") return run_reduce<T>(input, o, text);
  if (command == "realize") return run_realize<T>(input, o, text);
  if (command == "plan") return run_plan(input, o, text);
  if (command == "cover") return run_cover<T>(input, o, text);
  if (command == "path") return run_path<T>(input, o, text);
  throw UsageError("unknown command '" + command + "'");
}

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedInput:
    case ErrorCode::EmptyVector:
    case ErrorCode::InvalidArgument: return 2;
    default: return 1;
  }
}

}  // namespace detail

/// Runs one command. Never throws; failures become an "error" member and a non-zero exit code.
inline Response run(const std::string& command, const Json& input, const Options& o) {
  Response resp;
  resp.body = {{"command", command}, {"input", input}, {"options", detail::options_json(o, command)}};
  auto fail = [&](int code, const std::string& name, const std::string& msg) {
    resp.exit_code = code;
    resp.body["error"] = {{"code", name}, {"message", msg}};
    resp.text.clear();
  };
  try {
    resp.body["result"] = o.exact ? detail::dispatch<Rational>(command, input, o, resp.text)
                                  : detail::dispatch<double>(command, input, o, resp.text);
  } catch (const UsageError& e) {
    fail(2, "usage", e.what());
  } catch (const DomainError& e) {
    fail(detail::exit_code_for(e.code()), error_name(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(2, "malformed_input", e.what());
  } catch (const std::exception& e) {
    fail(1, "internal", e.what());
  }
  return resp;
}

/// Parses the textual input first; unparseable JSON is a usage error.
inline Response run_text(const std::string& command, const std::string& input_text, const Options& o) {
  Json input;
  try {
    input = Json::parse(input_text);
  } catch (const nlohmann::json::parse_error& e) {
    Response r;
    r.exit_code = 2;
    r.body = {{"command", command},
              {"input", input_text},
              {"options", detail::options_json(o, command)},
              {"error", {{"code", "malformed_input"}, {"message", e.what()}}}};
    return r;
  }
  return run(command, input, o);
}

/// Options object of a batch request layered over the command-line defaults.
inline Options merge_options(Options o, const Json& j) {
  if (j.is_null()) return o;
  if (!j.is_object()) throw UsageError("options must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "tolerance")
      o.tolerance = v.get<double>();
    else if (k == "seed")
      o.seed = v.get<std::uint64_t>();
    else if (k == "unit")
      o.unit = jsonio::parse_unit(v);
    else if (k == "format")
      o.pretty = v.get<std::string>() == "pretty";
    else if (k == "stop_at")
      o.stop_at = v.get<std::size_t>();
    else if (k == "cube")
      o.cube = v.get<std::string>() == "all" ? "" : v.get<std::string>();
    else if (k == "group")
      o.group = v.get<std::string>();
    else if (k == "numbers")
      o.exact = v.get<std::string>() != "float";
    else
      throw UsageError("unknown option '" + k + "'");
  }
  return o;
}

/// One request per input line, one compact response per output line. Returns the
/// largest exit code seen.
inline int run_batch(std::istream& in, std::ostream& out, const Options& defaults) {
  int worst = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Response r;
    try {
      Json req = Json::parse(line);
      const auto& cmd = jsonio::field(req, "command");
      r = run(cmd.get<std::string>(), jsonio::field(req, "input"),
              merge_options(defaults, req.value("options", Json())));
    } catch (const std::exception& e) {
      r.exit_code = 2;
      r.body = {{"request", line}, {"error", {{"code", "malformed_input"}, {"message", e.what()}}}};
    }
    worst = std::max(worst, r.exit_code);
    out << r.body.dump() << "\n";
  }
  return worst;
}

}  // namespace conemetric::cli
