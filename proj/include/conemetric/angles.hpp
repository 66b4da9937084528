#pragma once

// Angle and defect vectors, the positivity and holonomy constraints, and the
// l1 distance to the odd integer lattice.

#include <algorithm>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "conemetric/error.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

/// Pi: entries are multiples of pi (polygon angles). TwoPi: multiples of 2*pi (cone angles).
enum class AngleUnit { Pi, TwoPi };

inline const char* unit_name(AngleUnit u) { return u == AngleUnit::Pi ? "pi" : "two_pi"; }

template <class T>
class AngleVector {
 public:
  explicit AngleVector(std::vector<T> entries, AngleUnit unit = AngleUnit::TwoPi)
      : entries_(std::move(entries)), unit_(unit) {
    if (entries_.empty()) throw DomainError(ErrorCode::EmptyVector, "angle vector is empty");
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (!(entries_[i] > T(0)))
        throw DomainError(ErrorCode::NonPositiveEntry,
                          "angle " + std::to_string(i + 1) + " is not positive");
  }

  static AngleVector from_defect(const std::vector<T>& delta, AngleUnit unit = AngleUnit::TwoPi) {
    std::vector<T> theta(delta);
    for (auto& x : theta) x += T(1);
    return AngleVector(std::move(theta), unit);
  }

  const std::vector<T>& entries() const { return entries_; }
  const T& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  AngleUnit unit() const { return unit_; }

  /// Same numbers under the other unit: a polygon with angles pi*theta doubles to a
  /// sphere with cone angles 2*pi*theta.
  AngleVector with_unit(AngleUnit u) const { return AngleVector(entries_, u); }

  std::vector<T> defect() const {
    std::vector<T> d(entries_);
    for (auto& x : d) x -= T(1);
    return d;
  }

  bool operator==(const AngleVector& o) const { return unit_ == o.unit_ && entries_ == o.entries_; }

 private:
  std::vector<T> entries_;
  AngleUnit unit_;
};

/// Representative of delta modulo 2Z in [-1, 1).
template <class T>
T reduce_one(const T& x) {
  long long k = num::floor_ll((x + T(1)) / T(2));
  return x - T(2) * T(k);
}

template <class T>
std::vector<T> reduce(const std::vector<T>& delta) {
  std::vector<T> out;
  out.reserve(delta.size());
  for (const auto& x : delta) out.push_back(reduce_one(x));
  return out;
}

template <class T>
T l1_distance(const std::vector<T>& x, const LatticePoint& m) {
  T s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += num::abs(T(x[i] - T(m[i])));
  return s;
}

template <class T>
T l1_distance(const std::vector<T>& x, const std::vector<T>& y) {
  T s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += num::abs(T(x[i] - y[i]));
  return s;
}

inline long long coordinate_sum(const LatticePoint& m) {
  long long s = 0;
  for (auto v : m) s += v;
  return s;
}

inline bool is_odd_point(const LatticePoint& m) { return coordinate_sum(m) % 2 != 0; }

template <class T>
struct LatticeDistance {
  T distance;
  LatticePoint witness;
};

/// d1(delta, Z^n_o). Round every coordinate (ties to even); when the rounded point has
/// even sum, move the coordinate whose switch to the other neighbour costs least.
template <class T>
LatticeDistance<T> d1_odd_lattice(const std::vector<T>& delta) {
  if (delta.empty()) throw DomainError(ErrorCode::EmptyVector, "defect vector is empty");
  const std::size_t n = delta.size();
  LatticePoint m(n);
  T total(0);
  long long parity = 0;
  std::size_t best = 0;
  T best_cost(0);
  for (std::size_t j = 0; j < n; ++j) {
    m[j] = num::round_half_even(delta[j]);
    T f = num::abs(T(delta[j] - T(m[j])));
    total += f;
    parity += m[j];
    T switch_cost = T(1) - T(2) * f;
    if (j == 0 || switch_cost < best_cost) {
      best_cost = switch_cost;
      best = j;
    }
  }
  if (parity % 2 == 0) {
    m[best] += delta[best] >= T(m[best]) ? 1 : -1;
    total += best_cost;
  }
  return {total, m};
}

template <class T>
struct OddSubsetMin {
  T value;
  std::vector<std::size_t> subset;  // zero-based, ascending
};

/// min over X with |X| of the requested parity of
/// sum_{j in X} cost_in[j] + sum_{k not in X} cost_out[k].
/// Ties between in and out prefer out; the parity repair flips the first coordinate
/// with the smallest |cost_in - cost_out|.
template <class T>
OddSubsetMin<T> min_over_subsets(const std::vector<T>& cost_in, const std::vector<T>& cost_out,
                                 bool odd) {
  const std::size_t n = cost_in.size();
  if (n == 0) throw DomainError(ErrorCode::EmptyVector, "no coordinates");
  std::vector<bool> in(n);
  T value(0);
  std::size_t count = 0, flip = 0;
  T flip_cost(0);
  for (std::size_t j = 0; j < n; ++j) {
    in[j] = cost_in[j] < cost_out[j];
    value += in[j] ? cost_in[j] : cost_out[j];
    count += in[j];
    T gap = num::abs(T(cost_in[j] - cost_out[j]));
    if (j == 0 || gap < flip_cost) {
      flip_cost = gap;
      flip = j;
    }
  }
  if ((count % 2 == 1) != odd) {
    in[flip] = !in[flip];
    value += flip_cost;
  }
  OddSubsetMin<T> out{value, {}};
  for (std::size_t j = 0; j < n; ++j)
    if (in[j]) out.subset.push_back(j);
  return out;
}

template <class T>
OddSubsetMin<T> min_over_odd_subsets(const std::vector<T>& cost_in, const std::vector<T>& cost_out) {
  return min_over_subsets(cost_in, cost_out, true);
}

/// The holonomy distance written through reduced defects: min over odd X of
/// sum_X (1 - |rd_j|) + sum_{X^c} |rd_k|.
template <class T>
OddSubsetMin<T> holonomy_parity_min(const std::vector<T>& delta) {
  std::vector<T> in, out;
  for (const auto& r : reduce(delta)) {
    T a = num::abs(r);
    out.push_back(a);
    in.push_back(T(1) - a);
  }
  return min_over_odd_subsets(in, out);
}

enum class Status { PositivityViolated, HolonomyViolated, HolonomyBoundary, StrictInterior };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::PositivityViolated: return "positivity_violated";
    case Status::HolonomyViolated: return "holonomy_violated";
    case Status::HolonomyBoundary: return "holonomy_boundary";
    case Status::StrictInterior: return "strict_interior";
  }
  return "unknown";
}

inline constexpr double kDefaultTolerance = 1e-9;

template <class T>
struct AdmissibilityReport {
  bool positivity_ok = false;
  T holonomy_distance{};
  Status status = Status::PositivityViolated;
  LatticePoint witness;

  bool operator==(const AdmissibilityReport&) const = default;
};

/// Positivity is checked first: a vector violating both families reports PositivityViolated.
/// For floats the boundary band is |d1 - 1| <= tol; rationals compare exactly.
template <class T>
AdmissibilityReport<T> classify_defect(const std::vector<T>& delta, double tol = kDefaultTolerance) {
  auto [d, w] = d1_odd_lattice(delta);
  AdmissibilityReport<T> r;
  r.holonomy_distance = d;
  r.witness = std::move(w);
  bool above_minus_one = std::all_of(delta.begin(), delta.end(), [](const T& x) { return x > T(-1); });
  r.positivity_ok = above_minus_one && num::sum(delta) > T(-2);

  bool boundary, violated;
  if constexpr (is_exact_v<T>) {
    boundary = d == T(1);
    violated = d < T(1);
  } else {
    boundary = std::abs(d - 1.0) <= tol;
    violated = !boundary && d < 1.0;
  }
  if (!r.positivity_ok)
    r.status = Status::PositivityViolated;
  else if (violated)
    r.status = Status::HolonomyViolated;
  else if (boundary)
    r.status = Status::HolonomyBoundary;
  else
    r.status = Status::StrictInterior;
  return r;
}

template <class T>
AdmissibilityReport<T> classify(const AngleVector<T>& theta, double tol = kDefaultTolerance) {
  return classify_defect(theta.defect(), tol);
}

template <class T>
bool strictly_admissible(const std::vector<T>& delta, double tol = kDefaultTolerance) {
  return classify_defect(delta, tol).status == Status::StrictInterior;
}

template <class T>
struct PolygonCheck {
  bool feasible = false;
  std::vector<std::size_t> worst_subset;  // zero-based odd subset attaining the minimum
  T minimum{};
};

namespace detail {
template <class T>
PolygonCheck<T> polygon_check(const std::vector<T>& lengths, const T& half_turn, const T& slack) {
  if (lengths.empty()) throw DomainError(ErrorCode::EmptyVector, "no side lengths");
  std::vector<T> in, out;
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    const T& l = lengths[j];
    if (l < T(-slack) || l > T(half_turn + slack))
      throw DomainError(ErrorCode::InvalidArgument,
                        "side length " + std::to_string(j + 1) + " outside [0, pi]");
    in.push_back(half_turn - l);
    out.push_back(l);
  }
  auto best = min_over_odd_subsets(in, out);
  return {best.value >= T(half_turn - slack), std::move(best.subset), best.value};
}
}  // namespace detail

/// Closed-polygon test on lengths given in radians:
/// sum_X (pi - l_j) + sum_{X^c} l_k >= pi for every odd X.
inline PolygonCheck<double> polygon_feasible(const std::vector<double>& radians,
                                             double tol = kDefaultTolerance) {
  return detail::polygon_check(radians, std::numbers::pi, tol);
}

/// Same test with lengths measured in multiples of pi (so pi itself is 1).
inline PolygonCheck<Rational> polygon_feasible(const std::vector<Rational>& pi_units) {
  return detail::polygon_check(pi_units, Rational(1), Rational(0));
}

}  // namespace conemetric
