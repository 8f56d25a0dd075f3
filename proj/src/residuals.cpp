#include "qd/residuals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace qd {

CotanOperator build_cotan_operator(const TriMesh& mesh) {
  const int nv = mesh.vertex_count();
  std::map<std::pair<int, int>, double> w;
  std::vector<double> area(nv, 0.0);

  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.faces[f];
    const auto ang = mesh.face_angles(f);
    const double A = mesh.face_area(f);

    // cot of the angle opposite each edge
    for (int e = 0; e < 3; ++e) {
      const int u = t[(e + 1) % 3], v = t[(e + 2) % 3];
      const double cot = std::cos(ang[e]) / std::max(std::sin(ang[e]), 1e-12);
      w[{std::min(u, v), std::max(u, v)}] += 0.5 * cot;
    }

    // mixed Voronoi area (obtuse triangles fall back to halves/quarters)
    const bool obtuse0 = ang[0] > M_PI_2, obtuse1 = ang[1] > M_PI_2, obtuse2 = ang[2] > M_PI_2;
    if (obtuse0 || obtuse1 || obtuse2) {
      for (int e = 0; e < 3; ++e)
        area[t[e]] += (ang[e] > M_PI_2) ? A / 2.0 : A / 4.0;
    } else {
      const double l01 = mesh.edge_length(t[0], t[1]);
      const double l02 = mesh.edge_length(t[0], t[2]);
      const double l12 = mesh.edge_length(t[1], t[2]);
      auto cot = [&](int e) { return std::cos(ang[e]) / std::max(std::sin(ang[e]), 1e-12); };
      // vertex i gets (1/8)(l_ij^2 cot(angle at k) + l_ik^2 cot(angle at j))
      area[t[0]] += (l01 * l01 * cot(2) + l02 * l02 * cot(1)) / 8.0;
      area[t[1]] += (l01 * l01 * cot(2) + l12 * l12 * cot(0)) / 8.0;
      area[t[2]] += (l02 * l02 * cot(1) + l12 * l12 * cot(0)) / 8.0;
    }
  }

  CotanOperator op;
  op.area = std::move(area);
  op.weights.resize(nv);
  for (const auto& [edge, weight] : w) {
    op.weights[edge.first].push_back({edge.second, weight});
    op.weights[edge.second].push_back({edge.first, weight});
  }
  return op;
}

std::vector<double> CotanOperator::apply(const std::vector<double>& u) const {
  std::vector<double> out(u.size(), 0.0);
  for (std::size_t v = 0; v < u.size(); ++v) {
    double s = 0.0;
    for (const auto& [nbr, wgt] : weights[v]) s += wgt * (u[nbr] - u[v]);
    out[v] = s / std::max(area[v], 1e-14);
  }
  return out;
}

double pde_residual(const TriMesh& mesh, const SupportPlane& P) {
  const CotanOperator op = build_cotan_operator(mesh);
  std::vector<double> u(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    u[v] = plane_signed_sinh_distance(mesh.vertices[v], P);
  const std::vector<double> lap = op.apply(u);

  double worst = 0.0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.is_reported_vertex(v)) continue;
    worst = std::max(worst, std::abs(lap[v] - 2.0 * u[v]) / (1.0 + std::abs(u[v])));
  }
  return worst;
}

namespace {

// Two orthonormal spacelike vectors spanning the <.,.>-orthogonal complement
// of span(va, vb) for independent future null rays va, vb.
bool null_pair_complement(const MinkVec4& va, const MinkVec4& vb, MinkVec4* q1, MinkVec4* q2) {
  const MinkVec4 u1 = va + vb;  // timelike
  const MinkVec4 u2 = va - vb;  // spacelike
  const double n1 = mink_inner(u1, u1), n2 = mink_inner(u2, u2);
  if (!(n1 < -1e-12) || !(n2 > 1e-12)) return false;

  std::array<MinkVec4, 4> seeds = {MinkVec4(1, 0, 0, 0), MinkVec4(0, 1, 0, 0),
                                   MinkVec4(0, 0, 1, 0), MinkVec4(0, 0, 0, 1)};
  std::vector<MinkVec4> basis;
  for (const MinkVec4& e : seeds) {
    MinkVec4 t = e - u1 * (mink_inner(e, u1) / n1) - u2 * (mink_inner(e, u2) / n2);
    for (const MinkVec4& b : basis) t = t - b * mink_inner(t, b);
    const double q = mink_inner(t, t);
    if (q > 1e-10) {
      basis.push_back(t * (1.0 / std::sqrt(q)));
      if (basis.size() == 2) break;
    }
  }
  if (basis.size() != 2) return false;
  *q1 = basis[0];
  *q2 = basis[1];
  return true;
}

}  // namespace

ConvexHullProxy build_hull_proxy(const Quasicircle& gamma, int n_planes) {
  const std::vector<MinkVec4> rays = gamma.null_rays();
  const int n = static_cast<int>(rays.size());
  if (n < 16) throw resolution_error("build_hull_proxy: too few boundary samples");

  static const int kSepDivisors[] = {2, 3, 5, 8};
  ConvexHullProxy proxy;
  int attempts = 0;
  for (int i = 0; i < n_planes && attempts < 4 * n_planes; ++i, ++attempts) {
    const int a = static_cast<int>((static_cast<long long>(i) * n) / n_planes) % n;
    const int b = (a + std::max(1, n / kSepDivisors[i % 4])) % n;
    MinkVec4 q1, q2;
    if (!null_pair_complement(rays[a], rays[b], &q1, &q2)) continue;

    // maximize over the pencil p(s) = q1 cos s + q2 sin s the worst side value
    std::vector<double> A(n), B(n);
    for (int j = 0; j < n; ++j) {
      A[j] = mink_inner(rays[j], q1);
      B[j] = mink_inner(rays[j], q2);
    }
    auto worst_side = [&](double s) {
      const double cs = std::cos(s), sn = std::sin(s);
      double worst = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) worst = std::min(worst, A[j] * cs + B[j] * sn);
      return worst;
    };
    double best_s = 0.0, best = -std::numeric_limits<double>::infinity();
    const int scan = 720;
    for (int k = 0; k < scan; ++k) {
      const double s = 2.0 * M_PI * k / scan;
      const double val = worst_side(s);
      if (val > best) {
        best = val;
        best_s = s;
      }
    }
    // golden-section refinement around the best bracket
    double lo = best_s - 2.0 * M_PI / scan, hi = best_s + 2.0 * M_PI / scan;
    for (int k = 0; k < 60; ++k) {
      const double m1 = lo + 0.382 * (hi - lo), m2 = lo + 0.618 * (hi - lo);
      if (worst_side(m1) < worst_side(m2))
        lo = m1;
      else
        hi = m2;
    }
    best_s = 0.5 * (lo + hi);
    best = worst_side(best_s);
    if (best < -1e-9) continue;  // no supporting plane through this chord

    proxy.planes.emplace_back(q1 * std::cos(best_s) + q2 * std::sin(best_s), +1);
    proxy.sample_pairs.push_back({a, b});
  }

  if (static_cast<int>(proxy.planes.size()) < std::max(3, n_planes / 2))
    throw resolution_error("build_hull_proxy: boundary sampling too coarse to support planes");
  return proxy;
}

double hull_containment(const TriMesh& mesh, const Quasicircle& gamma, int n_planes) {
  const ConvexHullProxy proxy = build_hull_proxy(gamma, n_planes);
  double worst = 0.0;
  for (const SupportPlane& P : proxy.planes)
    for (const HPoint& x : mesh.vertices)
      worst = std::min(worst, plane_signed_sinh_distance(x, P));
  return worst;
}

namespace {

std::vector<double> dijkstra_from(const TriMesh& mesh, int source, double cutoff) {
  std::vector<double> dist(mesh.vertex_count(), std::numeric_limits<double>::infinity());
  const auto nbrs = mesh.vertex_neighbors();
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v] + 1e-15 || d > cutoff) continue;
    for (int w : nbrs[v]) {
      const double nd = d + mesh.edge_length(v, w);
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.push({nd, w});
      }
    }
  }
  return dist;
}

}  // namespace

double schauder_ratio(const TriMesh& mesh, int vertex, const SupportPlane& P, double R) {
  if (vertex < 0 || vertex >= mesh.vertex_count())
    throw domain_error("schauder_ratio: vertex out of range");
  const std::vector<double> dist = dijkstra_from(mesh, vertex, R + 1.0);

  std::vector<int> ball;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (dist[v] <= R) {
      if (mesh.is_boundary_vertex(v))
        throw domain_error("schauder_ratio: ball of radius R reaches the mesh boundary");
      ball.push_back(v);
    }

  double c0 = 0.0;
  std::vector<double> u(mesh.vertex_count(), 0.0);
  for (int v : ball) {
    u[v] = plane_signed_sinh_distance(mesh.vertices[v], P);
    c0 = std::max(c0, std::abs(u[v]));
  }
  if (c0 < 1e-14) return 0.0;  // u vanishes identically: ratio defined as 0

  // C^2 data on the half ball via local quadratic fits over two-rings.
  const auto nbrs = mesh.vertex_neighbors();
  const MinkVec4& x0 = mesh.vertices[vertex].v;
  const MinkVec4& n0 = mesh.normals[vertex];
  auto project_tangent = [&](const MinkVec4& e) {
    MinkVec4 t = e + x0 * mink_inner(e, x0);
    return t - n0 * mink_inner(t, n0);
  };
  MinkVec4 t1 = project_tangent(MinkVec4(1, 0, 0, 0));
  if (mink_inner(t1, t1) < 1e-6) t1 = project_tangent(MinkVec4(0, 1, 0, 0));
  t1 = t1 * (1.0 / std::sqrt(mink_inner(t1, t1)));
  MinkVec4 t2 = mink_cross(x0, n0, t1);
  t2 = t2 * (1.0 / std::sqrt(mink_inner(t2, t2)));

  auto coords = [&](int v) {
    const MinkVec4& y = mesh.vertices[v].v;
    const double ch = std::max(1.0, -mink_inner(x0, y));
    const double d = std::acosh(ch);
    if (d < 1e-14) return std::pair<double, double>(0.0, 0.0);
    const double sh = std::sqrt(ch * ch - 1.0);
    const MinkVec4 w = (y - x0 * ch) * (1.0 / sh);
    return std::pair<double, double>(d * mink_inner(w, t1), d * mink_inner(w, t2));
  };

  double c2 = 0.0;
  for (int v : ball) {
    if (dist[v] > R / 2.0) continue;
    std::set<int> stencil{v};
    for (int w1 : nbrs[v]) {
      stencil.insert(w1);
      for (int w2 : nbrs[w1]) stencil.insert(w2);
    }
    const auto [cx, cy] = coords(v);
    Eigen::MatrixXd A(stencil.size(), 6);
    Eigen::VectorXd rhs(stencil.size());
    int row = 0;
    bool ok = true;
    for (int w : stencil) {
      if (mesh.is_boundary_vertex(w) && w != v) {
        // boundary samples carry pinned values; still usable for the fit
      }
      const auto [wx, wy] = coords(w);
      const double dx = wx - cx, dy = wy - cy;
      A(row, 0) = 1.0;
      A(row, 1) = dx;
      A(row, 2) = dy;
      A(row, 3) = 0.5 * dx * dx;
      A(row, 4) = dx * dy;
      A(row, 5) = 0.5 * dy * dy;
      rhs(row) = plane_signed_sinh_distance(mesh.vertices[w], P);
      ++row;
    }
    if (!ok || row < 6) continue;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 6) continue;
    const Eigen::VectorXd c = qr.solve(rhs);
    const double grad = std::hypot(c[1], c[2]);
    const double m = 0.5 * (c[3] + c[5]);
    const double dev = std::sqrt(0.25 * (c[3] - c[5]) * (c[3] - c[5]) + c[4] * c[4]);
    const double hess = std::max(std::abs(m - dev), std::abs(m + dev));
    c2 = std::max({c2, std::abs(u[v]), grad, hess});
  }
  return c2 / c0;
}

}  // namespace qd
