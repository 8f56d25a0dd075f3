#include "qd/geom.hpp"

#include <algorithm>
#include <cmath>

namespace qd {

HPoint::HPoint(const MinkVec4& raw) {
  if (!raw.finite()) throw geometry_error("HPoint: non-finite components");
  const double q = mink_inner(raw, raw);
  if (q >= -1e-12) throw geometry_error("HPoint: vector is not timelike");
  if (raw.x4 <= 0) throw geometry_error("HPoint: not on the upper sheet");
  v = raw * (1.0 / std::sqrt(-q));
}

bool HPoint::valid(double tol) const {
  return v.finite() && std::abs(mink_inner(v, v) + 1.0) < tol && v.x4 > 0;
}

SupportPlane::SupportPlane(const MinkVec4& dual, int orient) {
  if (!dual.finite()) throw geometry_error("SupportPlane: non-finite dual");
  const double q = mink_inner(dual, dual);
  if (q <= 1e-12) throw geometry_error("SupportPlane: dual vector is not spacelike");
  p = dual * (1.0 / std::sqrt(q));
  orientation = orient >= 0 ? +1 : -1;
}

SupportPlane SupportPlane::oriented(const MinkVec4& dual, const HPoint& ref) {
  SupportPlane P(dual, +1);
  if (mink_inner(ref.v, P.p) < 0) P.orientation = -1;
  return P;
}

Isometry Isometry::rotation(int i, int j, double angle) {
  Isometry T;
  const double c = std::cos(angle), s = std::sin(angle);
  T.m[5 * i] = c;
  T.m[5 * j] = c;
  T.m[4 * i + j] = -s;
  T.m[4 * j + i] = s;
  return T;
}

Isometry Isometry::boost(int i, double t) {
  Isometry T;
  const double c = std::cosh(t), s = std::sinh(t);
  T.m[5 * i] = c;
  T.m[15] = c;
  T.m[4 * i + 3] = s;
  T.m[12 + i] = s;
  return T;
}

Isometry Isometry::compose(const Isometry& o) const {
  Isometry r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += m[4 * i + k] * o.m[4 * k + j];
      r.m[4 * i + j] = s;
    }
  return r;
}

Isometry Isometry::inverse() const {
  // m^{-1} = J m^T J for m in O(3,1)
  Isometry r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = m[4 * j + i];
      if ((i == 3) != (j == 3)) s = -s;
      r.m[4 * i + j] = s;
    }
  return r;
}

MinkVec4 Isometry::apply(const MinkVec4& x) const {
  const double c[4] = {x.x1, x.x2, x.x3, x.x4};
  double out[4];
  for (int i = 0; i < 4; ++i)
    out[i] = m[4 * i] * c[0] + m[4 * i + 1] * c[1] + m[4 * i + 2] * c[2] + m[4 * i + 3] * c[3];
  return {out[0], out[1], out[2], out[3]};
}

double Isometry::form_defect() const {
  // G = m^T J m, compare against J
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k) {
        const double sign = (k == 3) ? -1.0 : 1.0;
        s += m[4 * k + i] * sign * m[4 * k + j];
      }
      const double target = (i == j) ? ((i == 3) ? -1.0 : 1.0) : 0.0;
      worst = std::max(worst, std::abs(s - target));
    }
  return worst;
}

double hyp_distance(const HPoint& p, const HPoint& q) {
  const double ip = std::abs(mink_inner(p.v, q.v));
  if (ip < 1.0 - 1e-8)
    throw geometry_error("hyp_distance: |<p,q>| < 1, points are off the hyperboloid");
  return std::acosh(std::max(ip, 1.0));
}

double plane_signed_sinh_distance(const HPoint& x, const SupportPlane& P) {
  return P.orientation * mink_inner(x.v, P.p);
}

HPoint normal_flow(const HPoint& x, const MinkVec4& n, double rho) {
  if (std::abs(mink_inner(n, n) - 1.0) > 1e-9 || std::abs(mink_inner(x.v, n)) > 1e-9)
    throw geometry_error("normal_flow: n is not a unit tangent at x");
  return HPoint(x.v * std::cosh(rho) + n * std::sinh(rho));
}

HPoint project_to_plane(const HPoint& x, const SupportPlane& P) {
  const double u = mink_inner(x.v, P.p);
  // x - u p is timelike with <.,.> = -(1 + u^2); renormalizing lands on P.
  return HPoint(x.v - P.p * u);
}

ParallelPlanesProfile parallel_planes_distance_profile(double r, double w) {
  if (r < 0 || w < 0) throw domain_error("parallel_planes_distance_profile: r, w must be >= 0");
  const double tanh_route = std::cosh(r) * std::tanh(w);
  if (tanh_route >= 1.0)
    throw domain_error(
        "parallel_planes_distance_profile: cosh r * tanh w >= 1, the perpendicular "
        "from the far plane diverges");
  ParallelPlanesProfile out;
  out.distance = std::atanh(tanh_route);
  const double s = std::sinh(r) * std::sinh(w);
  out.sinh_distance = std::cosh(r) * std::sinh(w) / std::sqrt(1.0 - s * s);
  return out;
}

Vec3 to_klein(const HPoint& x) { return {x.v.x1 / x.v.x4, x.v.x2 / x.v.x4, x.v.x3 / x.v.x4}; }

HPoint from_klein(const Vec3& k) {
  const double n2 = k.norm2();
  if (n2 >= 1.0) throw domain_error("from_klein: point outside the unit ball");
  const double f = 1.0 / std::sqrt(1.0 - n2);
  return HPoint(MinkVec4(k.x * f, k.y * f, k.z * f, f));
}

Vec3 to_poincare_ball(const HPoint& x) {
  const double f = 1.0 / (1.0 + x.v.x4);
  return {x.v.x1 * f, x.v.x2 * f, x.v.x3 * f};
}

HPoint from_poincare_ball(const Vec3& b) {
  const double n2 = b.norm2();
  if (n2 >= 1.0) throw domain_error("from_poincare_ball: point outside the unit ball");
  const double f = 2.0 / (1.0 - n2);
  return HPoint(MinkVec4(b.x * f, b.y * f, b.z * f, (1.0 + n2) / (1.0 - n2)));
}

Vec3 ideal_sphere_point(const BoundaryPoint& b) {
  if (b.at_infinity) return {0, 0, 1};
  const double s = std::norm(b.z);
  const double d = s + 1.0;
  return {2.0 * b.z.real() / d, 2.0 * b.z.imag() / d, (s - 1.0) / d};
}

BoundaryPoint boundary_from_sphere(const Vec3& u) {
  // Stereographic projection from the north pole; the pole itself maps to the
  // explicit point at infinity, never to NaN.
  if (1.0 - u.z < 1e-14) return BoundaryPoint::infinity();
  return BoundaryPoint(cplx(u.x, u.y) / (1.0 - u.z));
}

MinkVec4 null_from_boundary(const BoundaryPoint& b) {
  const Vec3 u = ideal_sphere_point(b);
  return {u.x, u.y, u.z, 1.0};
}

BoundaryPoint boundary_from_null(const MinkVec4& v) {
  if (v.x4 <= 0) throw geometry_error("boundary_from_null: ray is not future-pointing");
  const double q = mink_inner(v, v);
  if (std::abs(q) > 1e-8 * v.x4 * v.x4)
    throw geometry_error("boundary_from_null: vector is not null");
  return boundary_from_sphere({v.x1 / v.x4, v.x2 / v.x4, v.x3 / v.x4});
}

}  // namespace qd
