#include "qd/curvature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <set>

namespace qd {

namespace {

struct TangentFrame {
  MinkVec4 t1, t2, n;
};

// Orthonormal tangent frame at vertex v aligned to a fixed reference
// direction (projected e1, falling back to e2 near its polar locus).
TangentFrame frame_at(const TriMesh& mesh, int v) {
  const MinkVec4& x = mesh.vertices[v].v;
  const MinkVec4& n = mesh.normals[v];
  auto project_tangent = [&](const MinkVec4& e) {
    MinkVec4 t = e + x * mink_inner(e, x);
    t = t - n * mink_inner(t, n);
    return t;
  };
  MinkVec4 t1 = project_tangent(MinkVec4(1, 0, 0, 0));
  if (mink_inner(t1, t1) < 1e-6) t1 = project_tangent(MinkVec4(0, 1, 0, 0));
  t1 = t1 * (1.0 / std::sqrt(mink_inner(t1, t1)));
  MinkVec4 t2 = mink_cross(x, n, t1);
  t2 = t2 * (1.0 / std::sqrt(mink_inner(t2, t2)));
  return {t1, t2, n};
}

// Tangent-plane coordinates of y via the ambient logarithm at x.
bool log_coords(const MinkVec4& x, const TangentFrame& fr, const MinkVec4& y, double* xi1,
                double* xi2) {
  const double ch = std::max(1.0, -mink_inner(x, y));
  const double d = std::acosh(ch);
  if (d < 1e-14) {
    *xi1 = *xi2 = 0.0;
    return true;
  }
  const double sh = std::sqrt(ch * ch - 1.0);
  const MinkVec4 w = (y - x * ch) * (1.0 / sh);
  *xi1 = d * mink_inner(w, fr.t1);
  *xi2 = d * mink_inner(w, fr.t2);
  return true;
}

// Cubic design row: 1, x, y, x^2/2, xy, y^2/2, x^3, x^2 y, x y^2, y^3.
std::array<double, 10> design_row(double x, double y) {
  return {1.0, x, y, 0.5 * x * x, x * y, 0.5 * y * y, x * x * x, x * x * y, x * y * y, y * y * y};
}

struct EigenPair {
  double lo, hi;
};

EigenPair sym2_eigenvalues(double a, double b, double c) {  // [[a,b],[b,c]]
  const double m = 0.5 * (a + c);
  const double dev = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return {m - dev, m + dev};
}

std::vector<std::vector<int>> two_rings(const TriMesh& mesh) {
  const auto nbrs = mesh.vertex_neighbors();
  std::vector<std::vector<int>> out(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    std::set<int> ring(nbrs[v].begin(), nbrs[v].end());
    for (int u : nbrs[v]) ring.insert(nbrs[u].begin(), nbrs[u].end());
    ring.erase(v);
    out[v] = {ring.begin(), ring.end()};
  }
  return out;
}

template <typename PerVertexB>
CurvatureReport run_estimator(const TriMesh& mesh, PerVertexB&& recover) {
  CurvatureReport rep;
  rep.rings = mesh.rings;
  rep.vertices = mesh.vertex_count();
  rep.lambda.assign(mesh.vertex_count(), 0.0);
  rep.trace_abs.assign(mesh.vertex_count(), 0.0);
  rep.flags = mesh.flags;

  const auto rings = two_rings(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.flags[v] & kFlagBoundary) continue;
    const auto& ring = rings[v];
    if (ring.size() < 12) {
      rep.flags[v] |= kFlagDegenerateRing;
      ++rep.skipped;
      continue;
    }
    const TangentFrame fr = frame_at(mesh, v);
    const int n = static_cast<int>(ring.size()) + 1;
    Eigen::MatrixXd A(n, 10);
    std::vector<double> xi1(n), xi2(n);
    xi1[0] = xi2[0] = 0.0;
    bool degenerate = false;
    for (int i = 0; i < n; ++i) {
      const MinkVec4& y = (i == 0) ? mesh.vertices[v].v : mesh.vertices[ring[i - 1]].v;
      if (!log_coords(mesh.vertices[v].v, fr, y, &xi1[i], &xi2[i])) {
        degenerate = true;
        break;
      }
      const std::array<double, 10> row = design_row(xi1[i], xi2[i]);
      for (int j = 0; j < 10; ++j) A(i, j) = row[j];
    }
    if (degenerate) {
      rep.flags[v] |= kFlagDegenerateRing;
      ++rep.skipped;
      continue;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 10) {
      rep.flags[v] |= kFlagDegenerateRing;
      ++rep.skipped;
      continue;
    }

    double b11 = 0, b12 = 0, b22 = 0;
    if (!recover(v, fr, ring, qr, &b11, &b12, &b22)) {
      rep.flags[v] |= kFlagDegenerateRing;
      ++rep.skipped;
      continue;
    }

    const EigenPair eig = sym2_eigenvalues(b11, b12, b22);
    rep.lambda[v] = std::max(std::abs(eig.lo), std::abs(eig.hi));
    rep.trace_abs[v] = std::abs(eig.lo + eig.hi);
    if (mesh.is_reported_vertex(v)) {
      ++rep.reported;
      rep.sup_lambda = std::max(rep.sup_lambda, rep.lambda[v]);
      rep.max_trace_abs = std::max(rep.max_trace_abs, rep.trace_abs[v]);
    }
  }
  return rep;
}

}  // namespace

CurvatureReport principal_curvatures(const TriMesh& mesh, const CurvatureOptions& opts) {
  const double tilt = opts.tilt;
  const double pn = 1.0 / std::sqrt(1.0 + tilt * tilt);  // <p, N> for every probe

  return run_estimator(
      mesh, [&](int v, const TangentFrame& fr, const std::vector<int>& ring,
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr, double* b11, double* b12,
                double* b22) {
        const int n = static_cast<int>(ring.size()) + 1;
        Eigen::VectorXd rhs(n);
        double s11 = 0, s12 = 0, s22 = 0;
        for (int k = 0; k < opts.probes; ++k) {
          const double ang = 2.0 * M_PI * k / opts.probes;
          const MinkVec4 t = fr.t1 * std::cos(ang) + fr.t2 * std::sin(ang);
          const MinkVec4 p = (fr.n + t * tilt) * pn;  // unit spacelike, <p,x> = 0
          rhs[0] = 0.0;                               // u(x) = <x,p> = 0 by construction
          for (int i = 1; i < n; ++i) rhs[i] = mink_inner(mesh.vertices[ring[i - 1]].v, p);
          const Eigen::VectorXd coef = qr.solve(rhs);
          const double u0 = coef[0];
          // B = (Hess u - u E)/<p, N>
          s11 += (coef[3] - u0) / pn;
          s12 += coef[4] / pn;
          s22 += (coef[5] - u0) / pn;
        }
        *b11 = s11 / opts.probes;
        *b12 = s12 / opts.probes;
        *b22 = s22 / opts.probes;
        (void)v;
        return true;
      });
}

CurvatureReport curvature_quadratic_fit(const TriMesh& mesh) {
  return run_estimator(
      mesh, [&](int v, const TangentFrame& fr, const std::vector<int>& ring,
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr, double* b11, double* b12,
                double* b22) {
        const int n = static_cast<int>(ring.size()) + 1;
        Eigen::VectorXd rhs(n);
        rhs[0] = 0.0;
        for (int i = 1; i < n; ++i) rhs[i] = mink_inner(mesh.vertices[ring[i - 1]].v, fr.n);
        const Eigen::VectorXd coef = qr.solve(rhs);
        // height = (1/2) II(xi, xi) + higher order
        *b11 = coef[3];
        *b12 = coef[4];
        *b22 = coef[5];
        (void)v;
        return true;
      });
}

void CurvatureReport::write_csv(std::ostream& os) const {
  os << "vertexId,lambda,flag\n";
  char line[96];
  for (std::size_t v = 0; v < lambda.size(); ++v) {
    std::snprintf(line, sizeof line, "%zu,%.12g,%u\n", v, lambda[v],
                  static_cast<unsigned>(flags[v]));
    os << line;
  }
}

}  // namespace qd
