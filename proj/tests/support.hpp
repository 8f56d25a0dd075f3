#pragma once

#include <cmath>
#include <random>

#include "qd/geom.hpp"
#include "qd/laurent.hpp"
#include "qd/trimesh.hpp"

namespace qd::test {

inline std::mt19937_64 rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// coordinate-wise agreement; distance-based checks lose half the digits to
// the square-root behavior of acosh near 1
inline bool coords_close(const HPoint& a, const HPoint& b, double tol) {
  const MinkVec4 d = a.v - b.v;
  return std::abs(d.x1) < tol && std::abs(d.x2) < tol && std::abs(d.x3) < tol &&
         std::abs(d.x4) < tol;
}

inline HPoint random_hpoint(std::mt19937_64& g, double max_radius = 2.0) {
  const double rho = uniform(g, 0.0, max_radius);
  const double z = uniform(g, -1.0, 1.0);
  const double phi = uniform(g, 0.0, 2.0 * M_PI);
  const double s = std::sqrt(1.0 - z * z);
  const MinkVec4 dir(s * std::cos(phi), s * std::sin(phi), z, 0.0);
  return HPoint(MinkVec4(0, 0, 0, 1) * std::cosh(rho) + dir * std::sinh(rho));
}

inline Isometry random_isometry(std::mt19937_64& g) {
  Isometry T = Isometry::rotation(0, 1, uniform(g, 0, 2 * M_PI));
  T = Isometry::boost(0, uniform(g, -1.0, 1.0)).compose(T);
  T = Isometry::rotation(1, 2, uniform(g, 0, 2 * M_PI)).compose(T);
  T = Isometry::boost(2, uniform(g, -1.0, 1.0)).compose(T);
  T = Isometry::rotation(0, 2, uniform(g, 0, 2 * M_PI)).compose(T);
  return T;
}

inline MoebiusTransform random_moebius(std::mt19937_64& g) {
  // kept away from degeneracy; poles land outside the sampling region below
  const cplx a(uniform(g, 0.8, 1.2), uniform(g, -0.1, 0.1));
  const cplx b(uniform(g, -0.3, 0.3), uniform(g, -0.3, 0.3));
  const cplx c(uniform(g, -0.05, 0.05), uniform(g, -0.05, 0.05));
  const cplx d(uniform(g, 0.9, 1.1), uniform(g, -0.1, 0.1));
  return MoebiusTransform(a, b, c, d);
}

// Random coefficients with sum k |c_k| <= budget < 1, which certifies
// univalence through the distortion bound |Psi(z)-Psi(w)| >= |z-w|(1 - sum k|c_k|).
inline std::vector<cplx> random_area_condition_coeffs(std::mt19937_64& g, double budget) {
  const int m = 1 + static_cast<int>(uniform(g, 0.0, 7.0));
  std::vector<cplx> c(m);
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    c[k] = cplx(uniform(g, -1, 1), uniform(g, -1, 1));
    total += (k + 1) * std::abs(c[k]);
  }
  const double scale = budget / std::max(total, 1e-12);
  for (cplx& v : c) v *= scale;
  return c;
}

// High-order central finite differences for the Schwarzian, the independent
// oracle for the exact series differentiation: fourth-order stencils for f'
// and f'', Richardson-extrapolated third derivative.
inline cplx schwarzian_fd(const LaurentMap& f, cplx z, double h = 1e-2) {
  const cplx f1 = (-f.eval(z + 2 * h) + 8.0 * f.eval(z + h) - 8.0 * f.eval(z - h) +
                   f.eval(z - 2 * h)) /
                  (12.0 * h);
  const cplx f2 = (-f.eval(z + 2 * h) + 16.0 * f.eval(z + h) - 30.0 * f.eval(z) +
                   16.0 * f.eval(z - h) - f.eval(z - 2 * h)) /
                  (12.0 * h * h);
  auto d3 = [&](double s) {
    return (f.eval(z + 2 * s) - 2.0 * f.eval(z + s) + 2.0 * f.eval(z - s) - f.eval(z - 2 * s)) /
           (2.0 * s * s * s);
  };
  const cplx f3 = (4.0 * d3(h / 2) - d3(h)) / 3.0;
  return f3 / f1 - 1.5 * (f2 / f1) * (f2 / f1);
}

// Unsigned distance from x to the plane by brute-force minimization over a
// geodesic polar net on the plane, refined around the best sample.
inline double plane_distance_bruteforce(const HPoint& x, const SupportPlane& P) {
  // anchor the net at the projection of a fixed point, not of x itself
  const HPoint anchor = project_to_plane(HPoint(MinkVec4(0.1, -0.2, 0.3, 1.2)), P);
  MinkVec4 t1(1, 0, 0, 0);
  t1 = t1 + anchor.v * mink_inner(t1, anchor.v);
  t1 = t1 - P.p * mink_inner(t1, P.p);
  if (mink_inner(t1, t1) < 1e-8) {
    t1 = MinkVec4(0, 1, 0, 0);
    t1 = t1 + anchor.v * mink_inner(t1, anchor.v);
    t1 = t1 - P.p * mink_inner(t1, P.p);
  }
  t1 = t1 * (1.0 / std::sqrt(mink_inner(t1, t1)));
  MinkVec4 t2 = mink_cross(anchor.v, P.p, t1);
  t2 = t2 * (1.0 / std::sqrt(mink_inner(t2, t2)));

  auto at = [&](double rho, double phi) {
    const MinkVec4 dir = t1 * std::cos(phi) + t2 * std::sin(phi);
    return HPoint(anchor.v * std::cosh(rho) + dir * std::sinh(rho));
  };
  double best = hyp_distance(x, anchor);
  double rho_lo = 0.0, rho_hi = 8.0, phi_lo = 0.0, phi_hi = 2.0 * M_PI;
  double best_rho = 0.0, best_phi = 0.0;
  for (int round = 0; round < 6; ++round) {
    for (int i = 0; i <= 160; ++i)
      for (int j = 0; j <= 128; ++j) {
        const double rho = rho_lo + (rho_hi - rho_lo) * i / 160.0;
        const double phi = phi_lo + (phi_hi - phi_lo) * j / 128.0;
        const double d = hyp_distance(x, at(rho, phi));
        if (d < best) {
          best = d;
          best_rho = rho;
          best_phi = phi;
        }
      }
    const double dr = (rho_hi - rho_lo) / 160.0 * 2.0, dp = (phi_hi - phi_lo) / 128.0 * 2.0;
    rho_lo = std::max(0.0, best_rho - dr);
    rho_hi = best_rho + dr;
    phi_lo = best_phi - dp;
    phi_hi = best_phi + dp;
  }
  return best;
}

// Structured geodesic-polar mesh of the plane x3 = 0 flowed to distance t
// along its unit normal: the synthetic equidistant surface with shape
// operator -tanh(t) E (not minimal for t != 0).
inline TriMesh equidistant_surface_mesh(double t, int rings = 16, int nb = 48,
                                        double max_radius = 1.5) {
  TriMesh mesh;
  mesh.vertices.resize(1 + static_cast<std::size_t>(rings) * nb);
  const MinkVec4 n(0, 0, 1, 0);
  auto place = [&](double tau, double phi) {
    const MinkVec4 base(std::sinh(tau) * std::cos(phi), std::sinh(tau) * std::sin(phi), 0.0,
                        std::cosh(tau));
    return HPoint(base * std::cosh(t) + n * std::sinh(t));
  };
  mesh.vertices[0] = place(0, 0);
  for (int k = 1; k <= rings; ++k)
    for (int j = 0; j < nb; ++j)
      mesh.vertices[1 + static_cast<std::size_t>(k - 1) * nb + j] =
          place(max_radius * k / rings, 2.0 * M_PI * j / nb);

  auto idx = [&](int k, int j) { return k == 0 ? 0 : 1 + (k - 1) * nb + ((j % nb + nb) % nb); };
  for (int j = 0; j < nb; ++j) mesh.faces.push_back({0, idx(1, j), idx(1, j + 1)});
  for (int k = 1; k < rings; ++k)
    for (int j = 0; j < nb; ++j) {
      mesh.faces.push_back({idx(k, j), idx(k + 1, j), idx(k + 1, j + 1)});
      mesh.faces.push_back({idx(k, j), idx(k + 1, j + 1), idx(k, j + 1)});
    }
  mesh.flags.assign(mesh.vertices.size(), kFlagNone);
  mesh.param.assign(mesh.vertices.size(), {-1, -1});
  for (int j = 0; j < nb; ++j) {
    mesh.boundary.push_back(idx(rings, j));
    mesh.flags[idx(rings, j)] |= kFlagBoundary;
  }
  mesh.rings = rings;
  mesh.boundary_samples = nb;
  mesh.compute_normals();
  mesh.flag_near_boundary(0.3);
  return mesh;
}

}  // namespace qd::test
