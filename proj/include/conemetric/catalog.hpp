#pragma once

// The eleven quadrilateral families: row 0 is the convex quadrilateral, rows 1-7 the
// embedded non-convex ones, rows 8-10 the immersed ones. Row i sends a convex angle
// vector theta to f_i(theta), coordinate k being offset[k] + sign[k] * theta[source[k]].

#include <array>
#include <cstddef>
#include <vector>

#include "conemetric/cubes.hpp"
#include "conemetric/error.hpp"
#include "conemetric/scalar.hpp"

namespace conemetric {

struct QuadRow {
  int index;
  std::array<int, 4> offset;
  std::array<int, 4> sign;
  std::array<std::size_t, 4> source;
  LatticePoint vertex;          // m_i = f_i(1)
  std::vector<Rational> center;  // c_i

  template <class T>
  std::vector<T> apply(const std::vector<T>& theta) const {
    check(theta.size());
    std::vector<T> out(4);
    for (std::size_t k = 0; k < 4; ++k) out[k] = T(offset[k]) + T(sign[k]) * theta[source[k]];
    return out;
  }

  template <class T>
  std::vector<T> invert(const std::vector<T>& image) const {
    check(image.size());
    std::vector<T> out(4);
    for (std::size_t k = 0; k < 4; ++k) out[source[k]] = T(sign[k]) * (image[k] - T(offset[k]));
    return out;
  }

  TruncatedCube<Rational> cube() const { return TruncatedCube<Rational>(center); }

 private:
  static void check(std::size_t n) {
    if (n != 4) throw DomainError(ErrorCode::InvalidArgument, "quadrilateral rows act on four angles");
  }
};

inline const std::vector<QuadRow>& quad_catalog() {
  static const std::vector<QuadRow> rows = [] {
    const Rational h(1, 2), t(3, 2), f(5, 2);
    const std::array<std::size_t, 4> id{0, 1, 2, 3}, swap24{0, 3, 2, 1};
    return std::vector<QuadRow>{
        {0, {0, 0, 0, 0}, {1, 1, 1, 1}, id, {1, 1, 1, 1}, {h, h, h, h}},
        {1, {2, 1, 0, 1}, {-1, -1, 1, -1}, id, {1, 0, 1, 0}, {t, h, h, h}},
        {2, {1, 1, 0, 0}, {1, -1, 1, 1}, id, {2, 0, 1, 1}, {t, h, h, h}},
        {3, {1, 0, 0, 1}, {1, 1, 1, 1}, id, {2, 1, 1, 2}, {t, h, h, t}},
        {4, {2, 2, 1, 1}, {-1, -1, -1, -1}, swap24, {1, 1, 0, 0}, {t, t, h, h}},
        {5, {2, 0, 2, 0}, {-1, 1, -1, 1}, swap24, {1, 1, 1, 1}, {t, h, t, h}},
        {6, {1, 1, 1, 1}, {1, -1, 1, -1}, id, {2, 0, 2, 0}, {t, h, t, h}},
        {7, {1, 1, 2, 0}, {1, -1, -1, 1}, id, {2, 0, 1, 1}, {t, h, t, h}},
        {8, {3, 1, 0, 0}, {-1, -1, 1, 1}, swap24, {2, 0, 1, 1}, {f, h, h, h}},
        {9, {2, 1, 0, 1}, {1, -1, 1, -1}, id, {3, 0, 1, 0}, {f, h, h, h}},
        {10, {2, 0, 0, 0}, {1, 1, 1, 1}, id, {3, 1, 1, 1}, {f, h, h, h}},
    };
  }();
  return rows;
}

/// Interior of the half truncated cube around (1,1,1,1) in the unit cube: exactly the
/// angle vectors of convex quadrilaterals.
template <class T>
bool in_convex_half_cube(const std::vector<T>& theta) {
  if (theta.size() != 4) return false;
  const T h = num::half<T>();
  HalfTruncatedCube<T> half(TruncatedCube<T>(std::vector<T>(4, h)), LatticePoint{1, 1, 1, 1});
  return half.interior_contains(theta);
}

/// Whether theta lies in the interior of the image half cube of row i.
template <class T>
bool in_row_image(const QuadRow& row, const std::vector<T>& theta) {
  std::vector<T> c;
  for (const auto& x : row.center) {
    if constexpr (is_exact_v<T>)
      c.push_back(x);
    else
      c.push_back(num::to_double(x));
  }
  HalfTruncatedCube<T> half(TruncatedCube<T>(c), row.vertex);
  return half.interior_contains(theta);
}

}  // namespace conemetric
