#include "qd/univalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qd {

namespace {

double cross2(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

bool on_segment(cplx p, cplx q, cplx r, double eps) {
  return r.real() <= std::max(p.real(), q.real()) + eps &&
         r.real() >= std::min(p.real(), q.real()) - eps &&
         r.imag() <= std::max(p.imag(), q.imag()) + eps &&
         r.imag() >= std::min(p.imag(), q.imag()) - eps;
}

bool segments_intersect(cplx p1, cplx q1, cplx p2, cplx q2) {
  const double scale = std::max({std::abs(p1), std::abs(q1), std::abs(p2), std::abs(q2), 1.0});
  const double eps = 1e-13 * scale * scale;
  const double d1 = cross2(p2, q2, p1);
  const double d2 = cross2(p2, q2, q1);
  const double d3 = cross2(p1, q1, p2);
  const double d4 = cross2(p1, q1, q2);
  if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
      ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
    return true;
  const double leps = 1e-13 * scale;
  if (std::abs(d1) <= eps && on_segment(p2, q2, p1, leps)) return true;
  if (std::abs(d2) <= eps && on_segment(p2, q2, q1, leps)) return true;
  if (std::abs(d3) <= eps && on_segment(p1, q1, p2, leps)) return true;
  if (std::abs(d4) <= eps && on_segment(p1, q1, q2, leps)) return true;
  return false;
}

}  // namespace

int winding_number(const std::vector<cplx>& polygon, cplx point) {
  double total = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = polygon[i] - point;
    const cplx b = polygon[(i + 1) % n] - point;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

bool polygon_self_intersects(const std::vector<cplx>& polygon, int* seg_a, int* seg_b) {
  const int n = static_cast<int>(polygon.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // skip segments sharing an endpoint (adjacent, incl. the wrap pair)
      if (j == i || j == (i + 1) % n || (j + 1) % n == i) continue;
      if (segments_intersect(polygon[i], polygon[(i + 1) % n], polygon[j],
                             polygon[(j + 1) % n])) {
        if (seg_a) *seg_a = i;
        if (seg_b) *seg_b = j;
        return true;
      }
    }
  }
  return false;
}

UnivalenceOutcome univalence_grid_check(const LaurentMap& psi, int resolution) {
  if (resolution < 64) throw domain_error("univalence_grid_check: resolution must be >= 64");

  UnivalenceOutcome out;
  // Boundary-concentrated radii plus a few rings far out; ordered outermost first.
  static const int kExponents[] = {-4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6, 8};
  std::vector<double> radii;
  for (int j : kExponents) radii.push_back(1.0 + std::ldexp(1.0, -j));

  const int n = resolution;
  double min_deriv = std::numeric_limits<double>::infinity();

  std::vector<std::vector<cplx>> params(radii.size()), images(radii.size());
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    params[ri].resize(n);
    images[ri].resize(n);
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * M_PI * k / n;
      const cplx z = std::polar(radii[ri], th);
      params[ri][k] = z;
      images[ri][k] = psi.eval(z);
      const double dz = std::abs(psi.deriv(z));
      min_deriv = std::min(min_deriv, dz);
      if (dz < 1e-9) {
        out.reason = "vanishing derivative on the grid";
        out.witness_a = out.witness_b = z;
        return out;
      }
    }
  }

  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    int sa = 0, sb = 0;
    if (polygon_self_intersects(images[ri], &sa, &sb)) {
      out.reason = "image of the circle |z| = " + std::to_string(radii[ri]) + " self-intersects";
      out.witness_a = params[ri][sa];
      out.witness_b = params[ri][sb];
      return out;
    }
  }

  // Nesting and orientation: each ring image must wind once positively around
  // samples of the next ring inward.
  for (std::size_t ri = 0; ri + 1 < radii.size(); ++ri) {
    for (int k = 0; k < 8; ++k) {
      const int idx = k * n / 8;
      const cplx inner = images[ri + 1][idx];
      const int w = winding_number(images[ri], inner);
      if (w != 1) {
        out.reason = "image rings are not positively nested (winding " + std::to_string(w) + ")";
        out.witness_a = params[ri + 1][idx];
        out.witness_b = params[ri][0];
        return out;
      }
    }
  }

  out.ok = true;
  out.certificate.resolution = resolution;
  out.certificate.min_abs_derivative = min_deriv;
  return out;
}

}  // namespace qd
