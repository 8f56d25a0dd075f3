#include "qd/vec.hpp"

namespace qd {

namespace {
inline double det3(double a11, double a12, double a13,
                   double a21, double a22, double a23,
                   double a31, double a32, double a33) {
  return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
         a13 * (a21 * a32 - a22 * a31);
}
}  // namespace

MinkVec4 mink_cross(const MinkVec4& a, const MinkVec4& b, const MinkVec4& c) {
  // Covector n_mu = eps_{mu,nu,rho,sigma} a^nu b^rho c^sigma, then raise the
  // index with J = diag(1,1,1,-1). Expansion by cofactors of the slot mu.
  const double n1 = det3(a.x2, a.x3, a.x4, b.x2, b.x3, b.x4, c.x2, c.x3, c.x4);
  const double n2 = -det3(a.x1, a.x3, a.x4, b.x1, b.x3, b.x4, c.x1, c.x3, c.x4);
  const double n3 = det3(a.x1, a.x2, a.x4, b.x1, b.x2, b.x4, c.x1, c.x2, c.x4);
  const double n4 = -det3(a.x1, a.x2, a.x3, b.x1, b.x2, b.x3, c.x1, c.x2, c.x3);
  return {n1, n2, n3, -n4};
}

}  // namespace qd
