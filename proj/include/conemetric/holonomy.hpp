#pragma once

// Closed broken geodesics on S^3 with prescribed side lengths pi*|reduced defect|, and
// the unit quaternions U_j = v_j * v_{j-1}^{-1} they induce.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "conemetric/angles.hpp"
#include "conemetric/error.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;

  static Quaternion identity() { return {}; }

  Quaternion operator*(const Quaternion& q) const {
    return {w * q.w - x * q.x - y * q.y - z * q.z, w * q.x + x * q.w + y * q.z - z * q.y,
            w * q.y - x * q.z + y * q.w + z * q.x, w * q.z + x * q.y - y * q.x + z * q.w};
  }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  double dot(const Quaternion& q) const { return w * q.w + x * q.x + y * q.y + z * q.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Quaternion normalized() const {
    double s = norm();
    return {w / s, x / s, y / s, z / s};
  }
  std::array<double, 3> imag() const { return {x, y, z}; }
  bool operator==(const Quaternion&) const = default;
};

inline double distance(const Quaternion& a, const Quaternion& b) {
  Quaternion d{a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  Quaternion s{a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  return 2.0 * std::atan2(d.norm(), s.norm());
}

/// Unit quaternion as an SU(2) matrix: [[w+iz, y+ix], [-y+ix, w-iz]].
inline std::array<std::array<std::complex<double>, 2>, 2> to_su2(const Quaternion& q) {
  using C = std::complex<double>;
  return {{{C(q.w, q.z), C(q.y, q.x)}, {C(-q.y, q.x), C(q.w, -q.z)}}};
}

/// Geodesic side lengths pi*|reduced defect|, computed exactly before conversion.
template <class T>
std::vector<double> side_lengths(const AngleVector<T>& theta) {
  std::vector<double> out;
  for (const auto& r : reduce(theta.defect())) out.push_back(std::numbers::pi * num::to_double(num::abs(r)));
  return out;
}

struct Interval {
  double lo = 0, hi = 0;
  bool contains(double v, double tol) const { return v >= lo - tol && v <= hi + tol; }
  bool operator==(const Interval&) const = default;
};

inline constexpr double kPlacementTolerance = 1e-12;
inline constexpr double kCheckTolerance = 1e-8;
// Haversine gaps below this are rounding noise: the three points are placed on one circle.
// Snapping moves side lengths by about this much, while leaving the noise in would tilt
// the vertex by its square root.
inline constexpr double kDegenerateGap = 1e-13;

/// I_k is the set of reachable distances |v_0 v_k| for k = 1..n-1; I_1 = {l_1}.
/// Throws HolonomyInfeasible when l_n lies outside I_{n-1}.
inline std::vector<Interval> propagate_intervals(const std::vector<double>& l, double tol = kPlacementTolerance) {
  const double pi = std::numbers::pi;
  const std::size_t n = l.size();
  if (n == 0) throw DomainError(ErrorCode::EmptyVector, "no side lengths");
  std::vector<Interval> I;
  if (n == 1) {
    if (l[0] > tol) throw DomainError(ErrorCode::HolonomyInfeasible, "a single side must have length zero");
    return I;
  }
  I.push_back({l[0], l[0]});
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Interval& p = I.back();
    const double len = l[k];
    Interval q;
    q.lo = (len >= p.lo && len <= p.hi) ? 0.0 : std::min(std::abs(p.lo - len), std::abs(p.hi - len));
    const double peak = pi - len;
    if (peak >= p.lo && peak <= p.hi)
      q.hi = pi;
    else if (p.hi < peak)
      q.hi = p.hi + len;
    else
      q.hi = 2 * pi - p.lo - len;
    q.lo = std::clamp(q.lo, 0.0, pi);
    q.hi = std::clamp(q.hi, 0.0, pi);
    I.push_back(q);
  }
  if (!I.back().contains(l[n - 1], tol))
    throw DomainError(ErrorCode::HolonomyInfeasible, "closing side length is not reachable");
  return I;
}

struct BrokenGeodesic {
  std::vector<Quaternion> vertices;  // v_0 .. v_n with v_n = v_0
  std::vector<double> target_lengths;
  std::vector<double> side_lengths;  // realized
  std::vector<double> diagonals;     // |v_0 v_k| for k = 1..n-1
  std::uint64_t seed = 0;
  int attempts = 1;
};

struct GeodesicOptions {
  int max_retries = 32;
  double rank_tolerance = 1e-9;
  // A realization counts as non-coaxial for the retry loop only with this much room.
  double noncoaxial_margin = 1e-4;
};

namespace detail {

inline double hav(double a) {
  double s = std::sin(a / 2);
  return s * s;
}

/// Point at distance d_next from v0 = 1 and len from prev, inside the (w, x, y) sphere.
inline Quaternion place_next(const Quaternion& prev, double d_prev, double d_next, double len, bool flip,
                             double free_azimuth) {
  const double pi = std::numbers::pi;
  if (len == 0.0) return prev;
  if (len == pi) return -prev;
  if (d_next == 0.0) return Quaternion::identity();
  if (d_next == pi) return -Quaternion::identity();
  double azimuth_prev = std::atan2(prev.y, prev.x);
  double spread;
  if (std::sin(d_prev) < kPlacementTolerance) {
    azimuth_prev = free_azimuth;
    spread = 0.0;
  } else {
    double s2 = hav(len) - hav(d_prev - d_next);
    double c2 = hav(d_prev + d_next) - hav(len);
    if (s2 < kDegenerateGap) s2 = 0.0;
    if (c2 < kDegenerateGap) c2 = 0.0;
    spread = 2.0 * std::atan2(std::sqrt(std::max(s2, 0.0)), std::sqrt(std::max(c2, 0.0)));
  }
  double az = azimuth_prev + (flip ? -spread : spread);
  return Quaternion{std::cos(d_next), std::sin(d_next) * std::cos(az), std::sin(d_next) * std::sin(az), 0.0};
}

inline Eigen::VectorXd singular_values(const std::vector<Quaternion>& pts) {
  Eigen::MatrixXd M(static_cast<Eigen::Index>(pts.size()), 4);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    M(r, 0) = pts[i].w;
    M(r, 1) = pts[i].x;
    M(r, 2) = pts[i].y;
    M(r, 3) = pts[i].z;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(4);
  s.head(svd.singularValues().size()) = svd.singularValues();
  return s;
}

/// One realization for fixed lengths. Diagonals are midpoints of their feasible
/// ranges when randomize is false, uniform draws otherwise.
inline BrokenGeodesic realize_once(const std::vector<double>& l, const std::vector<Interval>& I,
                                   std::mt19937_64& rng, bool randomize) {
  const double pi = std::numbers::pi;
  const std::size_t n = l.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  std::vector<double> d(n, 0.0);  // d[k] = |v_0 v_k|, k = 1..n-1
  if (n >= 2) d[n - 1] = std::clamp(l[n - 1], I[n - 2].lo, I[n - 2].hi);
  if (n >= 3) {
    for (std::size_t k = n - 2; k >= 1; --k) {
      const double next = d[k + 1], len = l[k];
      double lo = std::max({I[k - 1].lo, len - next, next - len});
      double hi = std::min({I[k - 1].hi, len + next, 2 * pi - next - len});
      if (lo > hi) lo = hi = std::clamp(0.5 * (lo + hi), I[k - 1].lo, I[k - 1].hi);
      d[k] = randomize ? lo + (hi - lo) * unit(rng) : 0.5 * (lo + hi);
      if (k == 1) d[k] = l[0];
    }
  }

  BrokenGeodesic g;
  g.target_lengths = l;
  g.vertices.push_back(Quaternion::identity());
  for (std::size_t k = 1; k < n; ++k) {
    double free_azimuth = 2 * pi * unit(rng);
    bool flip = coin(rng);
    if (k == 1) {
      double az = randomize ? free_azimuth : 0.0;
      g.vertices.push_back(
          place_next(g.vertices[0], 0.0, d[1], l[0], flip, az));
    } else {
      g.vertices.push_back(place_next(g.vertices[k - 1], d[k - 1], d[k], l[k - 1], flip, free_azimuth));
    }
  }
  g.vertices.push_back(Quaternion::identity());
  for (std::size_t k = 1; k + 1 < n + 1; ++k) g.diagonals.push_back(d[k]);
  for (std::size_t j = 1; j <= n; ++j) g.side_lengths.push_back(distance(g.vertices[j - 1], g.vertices[j]));
  return g;
}

}  // namespace detail

/// Numerical rank of the vertex set, counted with absolute tolerance on unit vectors.
inline int gram_rank(const std::vector<Quaternion>& vertices, double tol = 1e-9) {
  auto s = detail::singular_values(vertices);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++r;
  return r;
}

/// Realizes the side lengths pi*|reduced defect| as a closed broken geodesic through 1.
/// Strictly admissible inputs with n >= 3 are retried until the vertices span a
/// three-dimensional subspace.
template <class T>
BrokenGeodesic build_geodesic(const AngleVector<T>& theta, std::uint64_t seed = 0, const GeodesicOptions& opt = {}) {
  const auto delta = theta.defect();
  const T dist = d1_odd_lattice(delta).distance;
  bool infeasible, strict;
  if constexpr (is_exact_v<T>) {
    std::vector<Rational> units;
    for (const auto& r : reduce(delta)) units.push_back(num::abs(r));
    infeasible = !polygon_feasible(units).feasible;
    strict = dist > T(1);
  } else {
    infeasible = dist < 1.0 - kDefaultTolerance;
    strict = dist > 1.0 + kDefaultTolerance;
  }
  if (infeasible) throw DomainError(ErrorCode::HolonomyInfeasible, "side lengths violate the polygon inequalities");

  const auto l = side_lengths(theta);
  const auto I = propagate_intervals(l, 1e-9);
  std::mt19937_64 rng(seed);
  const bool want_spread = strict && l.size() >= 3;

  BrokenGeodesic best = detail::realize_once(l, I, rng, false);
  if (want_spread) {
    double best_s3 = detail::singular_values(best.vertices)(2);
    for (int a = 1; a <= opt.max_retries && best_s3 < opt.noncoaxial_margin; ++a) {
      auto g = detail::realize_once(l, I, rng, true);
      double s3 = detail::singular_values(g.vertices)(2);
      g.attempts = a + 1;
      if (s3 > best_s3) {
        best = std::move(g);
        best_s3 = s3;
      }
    }
  }
  best.seed = seed;
  return best;
}

struct StandardMatrixSet {
  std::vector<Quaternion> matrices;  // U_1 .. U_n
  std::vector<double> target_angles;
  std::vector<double> side_lengths;  // target lengths pi*|reduced defect|
  double closure_residual = 0;       // |U_n ... U_1 - 1|
  double max_trace_error = 0;        // max_j |Re U_j - cos l_j|
  double max_side_error = 0;
  bool coaxial = false;
  int gram_rank = 0;
  std::vector<double> singular_values;
};

/// Imaginary parts of the non-real matrices are pairwise parallel.
inline bool coaxiality_test(const std::vector<Quaternion>& matrices, double tol = kCheckTolerance) {
  std::vector<std::array<double, 3>> axes;
  for (const auto& q : matrices) {
    auto v = q.imag();
    if (std::hypot(v[0], v[1], v[2]) > tol) axes.push_back(v);
  }
  for (std::size_t a = 0; a < axes.size(); ++a)
    for (std::size_t b = a + 1; b < axes.size(); ++b) {
      const auto& p = axes[a];
      const auto& q = axes[b];
      double cx = p[1] * q[2] - p[2] * q[1], cy = p[2] * q[0] - p[0] * q[2], cz = p[0] * q[1] - p[1] * q[0];
      if (std::hypot(cx, cy, cz) > tol) return false;
    }
  return true;
}

inline bool coaxiality_test(const StandardMatrixSet& ms, double tol = kCheckTolerance) {
  return coaxiality_test(ms.matrices, tol);
}

template <class T>
StandardMatrixSet matrices_from_geodesic(const BrokenGeodesic& g, const AngleVector<T>& theta) {
  const std::size_t n = theta.size();
  if (g.vertices.size() != n + 1) throw DomainError(ErrorCode::InvalidArgument, "geodesic and angles differ in length");
  StandardMatrixSet ms;
  ms.target_angles = to_doubles(theta.entries());
  ms.side_lengths = side_lengths(theta);
  Quaternion prod = Quaternion::identity();
  for (std::size_t j = 1; j <= n; ++j) {
    Quaternion u = (g.vertices[j] * g.vertices[j - 1].conjugate()).normalized();
    ms.matrices.push_back(u);
    prod = (u * prod).normalized();
    ms.max_trace_error = std::max(ms.max_trace_error, std::abs(u.w - std::cos(ms.side_lengths[j - 1])));
    ms.max_side_error =
        std::max(ms.max_side_error, std::abs(distance(g.vertices[j - 1], g.vertices[j]) - ms.side_lengths[j - 1]));
  }
  Quaternion diff{prod.w - 1, prod.x, prod.y, prod.z};
  ms.closure_residual = diff.norm();
  std::vector<Quaternion> pts(g.vertices.begin(), g.vertices.end() - 1);
  auto s = detail::singular_values(pts);
  ms.singular_values.assign(s.data(), s.data() + s.size());
  ms.gram_rank = gram_rank(pts);
  ms.coaxial = ms.gram_rank <= 2;
  return ms;
}

/// A subset Y with sum_Y l - sum_{Y^c} l in 2*pi*Z, as forced for coaxial realizations.
inline std::optional<std::vector<std::size_t>> signed_closure_subset(const std::vector<double>& l,
                                                                     double tol = kCheckTolerance) {
  const std::size_t n = l.size();
  if (n > 20) throw DomainError(ErrorCode::InvalidArgument, "subset search limited to 20 sides");
  const double two_pi = 2 * std::numbers::pi;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += ((mask >> j) & 1) ? l[j] : -l[j];
    double r = std::remainder(s, two_pi);
    if (std::abs(r) <= tol) {
      std::vector<std::size_t> y;
      for (std::size_t j = 0; j < n; ++j)
        if ((mask >> j) & 1) y.push_back(j);
      return y;
    }
  }
  return std::nullopt;
}

}  // namespace conemetric
