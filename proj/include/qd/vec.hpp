#pragma once

#include <cmath>
#include <complex>

namespace qd {

using cplx = std::complex<double>;

// Vector in Minkowski R^{3,1} with the bilinear form
//   <x,y> = x1 y1 + x2 y2 + x3 y3 - x4 y4,
// so x4 is the timelike coordinate.
struct MinkVec4 {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0, x4 = 0.0;

  MinkVec4() = default;
  MinkVec4(double a, double b, double c, double d) : x1(a), x2(b), x3(c), x4(d) {}

  MinkVec4 operator+(const MinkVec4& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3, x4 + o.x4}; }
  MinkVec4 operator-(const MinkVec4& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3, x4 - o.x4}; }
  MinkVec4 operator*(double s) const { return {x1 * s, x2 * s, x3 * s, x4 * s}; }
  MinkVec4 operator-() const { return {-x1, -x2, -x3, -x4}; }
  MinkVec4& operator+=(const MinkVec4& o) {
    x1 += o.x1; x2 += o.x2; x3 += o.x3; x4 += o.x4;
    return *this;
  }

  bool finite() const {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3) && std::isfinite(x4);
  }
};

inline MinkVec4 operator*(double s, const MinkVec4& v) { return v * s; }

inline double mink_inner(const MinkVec4& a, const MinkVec4& b) {
  return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3 - a.x4 * b.x4;
}

// Minkowski analogue of the triple cross product: the returned vector is
// <.,.>-orthogonal to a, b and c. Components come from 3x3 cofactors of the
// matrix [a;b;c], with the sign of the time slot flipped by the metric.
MinkVec4 mink_cross(const MinkVec4& a, const MinkVec4& b, const MinkVec4& c);

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double a, double b, double c) : x(a), y(b), z(c) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

}  // namespace qd
