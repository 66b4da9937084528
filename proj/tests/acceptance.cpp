// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "conemetric/cubes.hpp"
#include "conemetric/holonomy.hpp"
#include "conemetric/merging.hpp"
#include "conemetric/validate.hpp"
#include "support.hpp"

using namespace conemetric;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_seconds = 0;  // 0: no runtime bound
};

struct Failure {
  std::ostringstream msg;
  int count = 0;
  template <class... A>
  void note(const A&... parts) {
    if (count++ < 3) {
      msg << (count > 1 ? "; " : "");
      (msg << ... << parts);
    }
  }
};

std::string str(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + to_string(v[k]);
  return s + ")";
}

Outcome finish(Failure& f, std::string summary, double limit = 0) {
  Outcome o;
  o.pass = f.count == 0;
  o.detail = o.pass ? std::move(summary) : std::to_string(f.count) + " failures: " + f.msg.str();
  o.limit_seconds = limit;
  return o;
}

// 1
Outcome lattice_oracle() {
  Rng rng(1001);
  Failure f;
  for (int t = 0; t < 10000; ++t) {
    auto d = random_vector(rng, uniform_int(rng, 1, 8), Rational(-4), Rational(4), 12);
    auto r = d1_odd_lattice(d);
    Rational brute = brute_d1(d);
    if (r.distance != brute) f.note(str(d), ": ", to_string(r.distance), " vs ", to_string(brute));
    if (!is_odd_point(r.witness) || l1_distance(d, r.witness) != r.distance) f.note(str(d), ": bad witness");
  }
  return finish(f, "10000 vectors, n <= 8, exact equality", 10);
}

// 2
Outcome parity_identity() {
  Rng rng(1002);
  Failure f;
  for (int t = 0; t < 10000; ++t) {
    auto d = random_vector(rng, uniform_int(rng, 1, 12), Rational(-6), Rational(6), 24);
    auto p = holonomy_parity_min(d).value;
    auto l = d1_odd_lattice(d).distance;
    if (p != l) f.note(str(d), ": ", to_string(p), " vs ", to_string(l));
  }
  return finish(f, "10000 vectors, exact equality");
}

// 3
Outcome five_points() {
  Rng rng(1003);
  Failure f;
  int minus = 0;
  for (int t = 0; t < 1000; ++t) {
    auto d = defect(strict_angles(rng, uniform_int(rng, 5, 10), Rational(4), 12, false));
    try {
      auto s = find_merge_constructive(d);
      if (!strictly_admissible(s.result) || !brute_strict(s.result)) f.note(str(d), ": result not strict");
      if (!contains_step(find_merge_bruteforce(d), s)) f.note(str(d), ": step missing from brute-force set");
      if (s.sign == MergeSign::Minus) {
        ++minus;
        if (!s.certificate || !s.certificate->valid()) f.note(str(d), ": Minus step without valid certificate");
      }
    } catch (const std::exception& e) {
      f.note(str(d), ": ", e.what());
    }
  }
  return finish(f, "1000 inputs, n in [5,10], " + std::to_string(minus) + " Minus steps", 30);
}

// 4
Outcome case_n_four() {
  Failure f;
  for (const char* a : {"0.1", "0.25", "0.4"}) {
    Rational x = Q(a);
    std::vector<Rational> d{x, -x, x - 1, x - 1};
    int positive = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        auto r = apply_merge(d, i, j, MergeSign::Plus);
        if (!brute_positivity(r)) continue;
        ++positive;
        if (brute_d1(r) > 1) f.note("a=", a, " pair ", i + 1, j + 1, " keeps strict holonomy");
      }
    if (positive != 3) f.note("a=", a, ": ", positive, " positivity-preserving mergings");
  }
  return finish(f, "a in {0.1, 0.25, 0.4}: all three positive mergings reach d1 <= 1");
}

// 5
Outcome realizer() {
  Rng rng(1005);
  Failure f;
  int built = 0;
  for (int t = 0; t < 1000; ++t) {
    auto raw = random_vector(rng, uniform_int(rng, 1, 12), Rational(1, 50), Rational(4), 20);
    AngleVector<Rational> theta(raw);
    bool allowed = !(brute_d1(theta.defect()) < 1);
    bool ok = true;
    try {
      auto g = build_geodesic(theta, t);
      auto ms = matrices_from_geodesic(g, theta);
      if (!(ms.closure_residual <= 1e-8)) f.note(str(raw), ": residual ", ms.closure_residual);
      auto red = reduce(theta.defect());
      for (std::size_t k = 0; k < red.size(); ++k) {
        double want = std::cos(std::numbers::pi * std::fabs(num::to_double(red[k])));
        if (!(std::fabs(ms.matrices[k].w - want) <= 1e-8)) f.note(str(raw), ": trace of U_", k + 1);
      }
    } catch (const DomainError& e) {
      ok = false;
      if (e.code() != ErrorCode::HolonomyInfeasible) f.note(str(raw), ": ", e.what());
    }
    built += ok;
    if (ok != allowed) f.note(str(raw), allowed ? ": realizable input rejected" : ": infeasible input realized");
  }
  return finish(f, "1000 inputs, n <= 12, " + std::to_string(built) + " realized, tolerance 1e-8", 60);
}

// 6
Outcome boundary_coaxiality() {
  Rng rng(1006);
  Failure f;
  for (int t = 0; t < 100; ++t) {
    auto raw = boundary_angles(rng, uniform_int(rng, 2, 10));
    AngleVector<Rational> theta(raw);
    if (brute_d1(theta.defect()) != 1) f.note(str(raw), ": generator left the boundary");
    auto ms = matrices_from_geodesic(build_geodesic(theta, t), theta);
    if (ms.gram_rank > 2 || !coaxiality_test(ms)) f.note(str(raw), ": boundary realization not coaxial");
  }
  int worst_seed = 0;
  for (int t = 0; t < 100; ++t) {
    auto raw = strict_angles(rng, uniform_int(rng, 3, 10), Rational(4), 12, false);
    AngleVector<Rational> theta(raw);
    bool found = false;
    for (std::uint64_t seed = 0; seed < 32 && !found; ++seed) {
      auto ms = matrices_from_geodesic(build_geodesic(theta, seed), theta);
      if (!ms.coaxial && !coaxiality_test(ms)) {
        found = true;
        worst_seed = std::max<int>(worst_seed, static_cast<int>(seed));
      }
    }
    if (!found) f.note(str(raw), ": no non-coaxial realization in 32 seeds");
  }
  return finish(f, "100 boundary inputs coaxial; 100 strict inputs non-coaxial within seed " +
                       std::to_string(worst_seed));
}

// 7
double ray_distance(const std::vector<double>& x, const std::vector<double>& base, const std::vector<double>& dir,
                    double a_max) {
  // l1 distance to base + a*dir, a in [0, a_max]; dir entries are +-1 so the optimum is a median
  std::vector<double> t;
  for (std::size_t k = 0; k < x.size(); ++k) t.push_back((x[k] - base[k]) * dir[k]);
  std::sort(t.begin(), t.end());
  double a = std::clamp(t[t.size() / 2], 0.0, a_max);
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += std::fabs(x[k] - base[k] - a * dir[k]);
  return s;
}

Outcome coverage() {
  Failure f;
  const std::vector<std::vector<LatticePoint>> printed{
      {{1, 0, 1, 0}, {1, 1, 0, 0}, {1, 0, 0, 1}, {2, 0, 1, 1}, {2, 1, 0, 1}, {2, 1, 1, 0}},
      {{2, 2, 1, 1}, {1, 1, 0, 0}, {1, 1, 1, 1}, {2, 2, 0, 0}, {2, 1, 0, 1}, {2, 1, 1, 0}, {1, 2, 0, 1}, {1, 2, 1, 0}},
      {{3, 1, 1, 1}, {2, 1, 1, 0}, {2, 1, 0, 1}, {2, 0, 1, 1}, {3, 1, 0, 0}, {3, 0, 1, 0}, {3, 0, 0, 1}},
  };
  const auto& tables = coverage_tables();
  if (tables.size() != 3) f.note("expected three coverage tables");
  for (std::size_t k = 0; k < tables.size() && k < 3; ++k)
    if (tables[k].vertices != printed[k]) f.note(tables[k].name, ": vertex list differs from the printed one");

  Rng rng(1007);
  std::ostringstream counts;
  for (const auto& table : tables) {
    TruncatedCube<Rational> cube(table.center);
    int samples = 0, excluded = 0;
    while (samples < 10000) {
      std::vector<Rational> x;
      for (const auto& c : table.center) x.push_back(c + random_rational(rng, Rational(-1, 2), Rational(1, 2), 1000));
      if (!cube.interior_contains(x)) continue;
      ++samples;
      auto xd = to_doubles(x);
      double near;
      if (table.name == "one_big")
        near = ray_distance(xd, {1, 1, 1, 1}, {1, -1, -1, -1}, 1);
      else if (table.name == "one_huge")
        near = ray_distance(xd, {2, 0, 0, 0}, {1, 1, 1, 1}, 0.5);
      else
        near = l1_distance(xd, to_doubles(table.center));
      bool covered = coverage_check(x, table.center, table.vertices, PermutationGroup::S4).covered;
      if (near < 1e-6) {
        ++excluded;
        continue;
      }
      if (!covered) f.note(table.name, ": ", str(x), " not covered");
    }
    counts << table.name << " " << samples << (excluded ? " (" + std::to_string(excluded) + " excluded)" : "") << ", ";
  }
  // the excluded sets really are uncovered
  for (const char* a : {"0.2", "0.5", "0.9"}) {
    Rational x = Q(a);
    std::vector<Rational> on_ray{1 + x, 1 - x, 1 - x, 1 - x};
    if (coverage_check(on_ray, tables[0].center, tables[0].vertices, PermutationGroup::S4).covered)
      f.note("one_big ray point a=", a, " reported covered");
  }
  if (coverage_check(tables[1].center, tables[1].center, tables[1].vertices, PermutationGroup::S4).covered)
    f.note("two_big center reported covered");
  return finish(f, counts.str() + "vertex lists verbatim");
}

// 8
Outcome planner() {
  Rng rng(1008);
  Failure f;
  auto check = [&](const std::vector<Rational>& th) {
    try {
      auto plan = plan_sphere_n(th);
      auto r = validate_plan(plan, th);
      if (!r.ok) f.note(str(th), ": ", r.issues.empty() ? "invalid" : r.issues.front());
      if (constants(plan.angles) != th) f.note(str(th), ": root angles differ");
      Rational sum = 0;
      for (const auto& x : th) sum += x;
      Affine area(Rational(2 * (sum - static_cast<long long>(th.size()) + 2)));
      if (plan.area != area) f.note(str(th), ": area ", plan.area.str());
    } catch (const std::exception& e) {
      f.note(str(th), ": ", e.what());
    }
  };
  for (int t = 0; t < 1000; ++t) check(strict_angles(rng, uniform_int(rng, 3, 10), Rational(4), 12, true));
  for (const char* a : {"0.1", "0.3", "0.5", "0.7", "0.9"}) {
    Rational x = Q(a);
    check({1 + x, 1 - x, 1 - x, 1 - x});
  }
  for (const char* b : {"0.1", "0.25", "0.4", "0.49"}) {
    Rational x = Q(b);
    check({2 + x, x, x, x});
  }
  check(Qs({"5/2", "1/2", "1/2", "1/2"}));
  return finish(f, "1000 random inputs, n in [3,10], plus the sporadic rays and (5/2,1/2,1/2,1/2)", 60);
}

// 9
Outcome catalog() {
  Rng rng(1009);
  Failure f;
  const auto& rows = quad_catalog();
  if (rows.size() != 11) f.note("expected rows 0..10");
  for (const auto& row : rows) {
    if (row.index == 0) continue;
    auto img = row.apply(std::vector<Rational>(4, Rational(1)));
    if (img != std::vector<Rational>(row.vertex.begin(), row.vertex.end())) f.note("row ", row.index, ": f(1) != m");
  }
  int samples = 0;
  while (samples < 1000) {
    auto th = random_vector(rng, 4, Rational(0), Rational(1), 100);
    if (!in_convex_half_cube(th)) continue;
    ++samples;
    for (const auto& row : rows) {
      if (row.index == 0) continue;
      auto img = row.apply(th);
      HalfTruncatedCube<Rational> target(row.cube(), row.vertex);
      if (!target.interior_contains(img)) f.note("row ", row.index, ": ", str(th), " maps outside");
    }
  }
  return finish(f, "10 rows, f_i(1) = m_i, 1000 samples each");
}

// 10
Outcome connectivity() {
  Rng rng(1010);
  Failure f;
  std::size_t breakpoints = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = uniform_int(rng, 4, 8);
    auto a = defect(strict_angles(rng, n, Rational(4), 12, false));
    auto b = defect(strict_angles(rng, n, Rational(4), 12, false));
    auto p = interior_path(a, b);
    if (p.vertices.front() != a || p.vertices.back() != b) f.note(str(a), ": path does not join the endpoints");
    for (const auto& v : p.vertices) {
      ++breakpoints;
      if (!(brute_d1(v) > 1)) f.note(str(v), ": breakpoint not strictly inside");
    }
    if (!(p.min_sample_distance > 1)) f.note(str(a), " -> ", str(b), ": sample at distance <= 1");
  }
  return finish(f, "100 pairs, n in [4,8], " + std::to_string(breakpoints) + " breakpoints strictly inside");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"lattice oracle equivalence", lattice_oracle},
      {"parity-min identity", parity_identity},
      {"merge ladder for five or more points", five_points},
      {"four-point counterexample to positive merging", case_n_four},
      {"realizer matches the holonomy constraint", realizer},
      {"boundary coaxiality", boundary_coaxiality},
      {"coverage of the three cubes", coverage},
      {"planner soundness", planner},
      {"quadrilateral catalog fidelity", catalog},
      {"connectivity of the strict region", connectivity},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && o.limit_seconds > 0 && secs >= o.limit_seconds) {
      o.pass = false;
      o.detail += " (took " + std::to_string(secs) + " s, limit " + std::to_string(o.limit_seconds) + " s)";
    }
    failed += !o.pass;
    std::printf("%s  %2d. %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
