#pragma once

// Random generators and brute-force oracles shared by the unit tests and the
// acceptance binary. The oracles deliberately avoid the library's algorithms.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/scalar.hpp"

namespace testing_support {

using conemetric::LatticePoint;
using conemetric::Rational;
using Rng = std::mt19937_64;

inline Rational Q(const std::string& s) { return conemetric::parse_rational(s); }

inline std::vector<Rational> Qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(Q(s));
  return out;
}

inline long long uniform_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// Rational in [lo, hi] with a denominator drawn from 1..max_den.
inline Rational random_rational(Rng& rng, const Rational& lo, const Rational& hi, long long max_den) {
  long long den = uniform_int(rng, 1, max_den);
  long long a = conemetric::num::floor_ll(lo * den);
  long long b = conemetric::num::floor_ll(hi * den);
  while (Rational(a, den) < lo) ++a;
  if (a > b) return lo;
  return Rational(uniform_int(rng, a, b), den);
}

inline std::vector<Rational> random_vector(Rng& rng, std::size_t n, const Rational& lo, const Rational& hi,
                                           long long max_den) {
  std::vector<Rational> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(random_rational(rng, lo, hi, max_den));
  return v;
}

inline std::vector<Rational> defect(std::vector<Rational> theta) {
  for (auto& x : theta) x -= 1;
  return theta;
}

inline std::vector<Rational> angles(std::vector<Rational> delta) {
  for (auto& x : delta) x += 1;
  return delta;
}

inline bool any_integral(const std::vector<Rational>& v) {
  return std::any_of(v.begin(), v.end(), [](const Rational& x) { return conemetric::num::is_integral(x); });
}

// ---- oracles

/// Exhaustive search over every odd-sum integer vector within +-2 of the coordinatewise
/// rounding. Costs are scaled to integers over a common denominator.
inline Rational brute_d1(const std::vector<Rational>& delta, LatticePoint* witness = nullptr) {
  using boost::multiprecision::denominator;
  const std::size_t n = delta.size();
  long long D = 1;
  for (const auto& x : delta) D = std::lcm(D, conemetric::num::to_ll(conemetric::Integer(denominator(x))));
  std::vector<std::array<long long, 5>> cost(n);
  std::vector<std::array<long long, 5>> point(n);
  for (std::size_t k = 0; k < n; ++k) {
    long long r = conemetric::num::floor_ll(Rational(delta[k] + Rational(1, 2)));
    for (int s = 0; s < 5; ++s) {
      long long m = r + s - 2;
      Rational c = delta[k] - m;
      if (c < 0) c = -c;
      cost[k][s] = conemetric::num::to_ll(conemetric::Integer(boost::multiprecision::numerator(Rational(c * D))));
      point[k][s] = m;
    }
  }
  long long best = -1;
  std::vector<int> choice(n), best_choice(n);
  std::function<void(std::size_t, long long, long long)> dfs = [&](std::size_t k, long long acc, long long parity) {
    if (best >= 0 && acc >= best) return;  // costs are non-negative
    if (k == n) {
      if ((parity & 1) && (best < 0 || acc < best)) {
        best = acc;
        best_choice = choice;
      }
      return;
    }
    for (int s = 0; s < 5; ++s) {
      choice[k] = s;
      dfs(k + 1, acc + cost[k][s], parity + point[k][s]);
    }
  };
  dfs(0, 0, 0);
  if (witness) {
    witness->clear();
    for (std::size_t k = 0; k < n; ++k) witness->push_back(point[k][best_choice[k]]);
  }
  return Rational(best, D);
}

/// Left side of the polygon inequality minimised over every odd subset, in units of pi.
inline Rational brute_polygon_min(const std::vector<Rational>& l) {
  const std::size_t n = l.size();
  Rational best = -1;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (__builtin_popcountl(mask) % 2 == 0) continue;
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += ((mask >> j) & 1) ? Rational(1 - l[j]) : l[j];
    if (best < 0 || s < best) best = s;
  }
  return best;
}

inline bool brute_positivity(const std::vector<Rational>& delta) {
  Rational s = 0;
  for (const auto& x : delta) {
    if (!(x > -1)) return false;
    s += x;
  }
  return s > -2;
}

inline bool brute_strict(const std::vector<Rational>& delta) { return brute_positivity(delta) && brute_d1(delta) > 1; }

/// Rejection sample of a strictly admissible angle vector (units of 2*pi).
inline std::vector<Rational> strict_angles(Rng& rng, std::size_t n, const Rational& hi, long long max_den,
                                           bool non_integral) {
  for (;;) {
    auto theta = random_vector(rng, n, Rational(1, 100), hi, max_den);
    if (std::any_of(theta.begin(), theta.end(), [](const Rational& x) { return !(x > 0); })) continue;
    if (non_integral && any_integral(theta)) continue;
    if (conemetric::strictly_admissible(defect(theta))) return theta;
  }
}

/// Angle vector with holonomy distance exactly one: the reduced defects are the side
/// lengths (in units of pi) of a degenerate polygon whose last side is the sum of the others.
inline std::vector<Rational> boundary_angles(Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<Rational> l = random_vector(rng, n - 1, Rational(0), Rational(1, 2), 12);
    Rational last = 0;
    for (const auto& x : l) last += x;
    if (last > 1 || last == 0) continue;
    l.push_back(last);
    std::vector<Rational> theta;
    for (const auto& x : l) {
      bool below = x < 1 && x > 0 && uniform_int(rng, 0, 1) == 0;
      theta.push_back(Rational(1 + (below ? Rational(-x) : x) + 2 * uniform_int(rng, 0, 1)));
    }
    if (conemetric::d1_odd_lattice(defect(theta)).distance == 1) return theta;
  }
}

/// Solves A x = b exactly; false when A is singular.
inline bool solve_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b, std::vector<Rational>& x) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) return false;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = b[r] / A[r][r];
  return true;
}

/// Whether x is a convex combination of the given points, by Caratheodory: some
/// (dim+1)-subset has non-negative barycentric coordinates.
inline bool in_convex_hull(const std::vector<Rational>& x, const std::vector<std::vector<Rational>>& pts) {
  const std::size_t d = x.size(), k = d + 1, m = pts.size();
  std::vector<int> pick(m, 0);
  std::fill(pick.end() - static_cast<long>(std::min(k, m)), pick.end(), 1);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) idx.push_back(i);
    if (idx.size() != k) continue;
    std::vector<std::vector<Rational>> A(k, std::vector<Rational>(k));
    std::vector<Rational> b(k), lambda;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < k; ++c) A[r][c] = pts[idx[c]][r];
      b[r] = x[r];
    }
    for (std::size_t c = 0; c < k; ++c) A[d][c] = 1;
    b[d] = 1;
    if (!solve_exact(A, b, lambda)) continue;
    if (std::all_of(lambda.begin(), lambda.end(), [](const Rational& v) { return v >= 0; })) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

inline std::vector<std::vector<Rational>> cube_vertices(const std::vector<Rational>& center, bool odd) {
  const std::size_t n = center.size();
  std::vector<std::vector<Rational>> out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<Rational> v;
    long long s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      long long c = conemetric::num::floor_ll(center[j]) + ((mask >> j) & 1);
      v.push_back(c);
      s += c;
    }
    if ((s % 2 != 0) == odd) out.push_back(v);
  }
  return out;
}

}  // namespace testing_support
