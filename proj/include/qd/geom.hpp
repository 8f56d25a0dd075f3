#pragma once

#include <array>
#include <optional>

#include "qd/errors.hpp"
#include "qd/vec.hpp"

namespace qd {

// Point on the upper sheet of the unit hyperboloid: <v,v> = -1, x4 > 0.
// Arithmetic that leaves the quadric goes through renormalize(), which keeps
// the drift within 1e-10.
struct HPoint {
  MinkVec4 v{0, 0, 0, 1};

  HPoint() = default;
  explicit HPoint(const MinkVec4& raw);  // renormalizes, throws geometry_error if not timelike-future

  static HPoint renormalize(const MinkVec4& raw) { return HPoint(raw); }

  bool valid(double tol = 1e-10) const;
};

// Totally geodesic plane, encoded by its de Sitter dual p with <p,p> = +1.
// `orientation` fixes which side counts as positive for signed distances.
struct SupportPlane {
  MinkVec4 p;
  int orientation = +1;

  SupportPlane() : p(0, 0, 1, 0) {}
  explicit SupportPlane(const MinkVec4& dual, int orient = +1);  // normalizes, throws if not spacelike

  // Plane through two points of the hyperboloid and the origin direction n;
  // convenience: plane with dual n oriented so that `ref` is on the positive side.
  static SupportPlane oriented(const MinkVec4& dual, const HPoint& ref);
};

// Linear isometry of R^{3,1} preserving the form and the upper sheet.
struct Isometry {
  // row-major 4x4
  std::array<double, 16> m{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

  static Isometry identity() { return {}; }
  // Rotation by `angle` in the spatial plane (i,j), i,j in {0,1,2}.
  static Isometry rotation(int i, int j, double angle);
  // Boost of rapidity `t` in the plane (i,3), i in {0,1,2}.
  static Isometry boost(int i, double t);

  Isometry compose(const Isometry& o) const;  // this after o
  Isometry inverse() const;                   // J m^T J

  MinkVec4 apply(const MinkVec4& x) const;
  HPoint apply(const HPoint& x) const { return HPoint(apply(x.v)); }
  SupportPlane apply(const SupportPlane& P) const {
    return SupportPlane(apply(P.p), P.orientation);
  }

  // max |m^T J m - J| entry
  double form_defect() const;
  bool valid(double tol = 1e-9) const { return form_defect() < tol && m[15] > 0; }
};

// Point of the ideal boundary, stored as a point of the extended plane C-hat.
// The chart is stereographic projection from the north pole (0,0,1) of the
// ideal sphere, so |z| < 1 corresponds to the lower hemisphere and z = 0 to
// the south pole. Equivalently a future null ray up to scale.
struct BoundaryPoint {
  cplx z{0, 0};
  bool at_infinity = false;

  BoundaryPoint() = default;
  explicit BoundaryPoint(cplx w) : z(w) {}
  static BoundaryPoint infinity() {
    BoundaryPoint b;
    b.at_infinity = true;
    return b;
  }
};

// --- inner products and distances -------------------------------------------

// d(p,q) = arccosh |<p,q>|. Throws geometry_error when |<p,q>| < 1 - 1e-8,
// which signals inputs off the hyperboloid.
double hyp_distance(const HPoint& p, const HPoint& q);

// sinh of the signed distance from x to P, i.e. orientation * <x, P.p>.
double plane_signed_sinh_distance(const HPoint& x, const SupportPlane& P);

// Point at signed distance rho from x along the geodesic with unit initial
// velocity n; requires <n,n> = 1 and <x,n> = 0 within 1e-9.
HPoint normal_flow(const HPoint& x, const MinkVec4& n, double rho);

// Foot of the perpendicular from x to P.
HPoint project_to_plane(const HPoint& x, const SupportPlane& P);

// --- two-plane trigonometry ---------------------------------------------------

// Distance from P- of the point of P+ sitting above a point of P- at distance r
// from the common perpendicular, where w is the length of the perpendicular:
//   tanh d = cosh r * tanh w,   sinh d = cosh r sinh w / sqrt(1 - sinh^2 r sinh^2 w).
// Both routes are computed; they agree within 1e-12 on the domain
// cosh r * tanh w < 1, outside of which a domain_error is thrown.
struct ParallelPlanesProfile {
  double distance = 0.0;
  double sinh_distance = 0.0;
};
ParallelPlanesProfile parallel_planes_distance_profile(double r, double w);

// --- model conversions --------------------------------------------------------

Vec3 to_klein(const HPoint& x);
HPoint from_klein(const Vec3& k);  // needs |k| < 1
Vec3 to_poincare_ball(const HPoint& x);
HPoint from_poincare_ball(const Vec3& b);  // needs |b| < 1

// Ideal sphere <-> C-hat chart. The null ray of a boundary point is (u, 1)
// for u the unit sphere point.
Vec3 ideal_sphere_point(const BoundaryPoint& b);
BoundaryPoint boundary_from_sphere(const Vec3& u);
MinkVec4 null_from_boundary(const BoundaryPoint& b);
BoundaryPoint boundary_from_null(const MinkVec4& v);  // needs v future null

}  // namespace qd
