#include "qd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qd {

int SolverConfig::finest_rings() const {
  // ring k carries ~ 2 pi k vertices, so V ~ pi R^2
  const int granularity = 1 << std::max(0, levels - 1);
  int r = static_cast<int>(std::lround(std::sqrt(target_vertices / M_PI)));
  r = std::max(granularity, (r / granularity) * granularity);
  return r;
}

int SolverConfig::finest_boundary_samples() const {
  const int granularity = 2 << std::max(0, levels - 1);
  const int r = finest_rings();
  int nb = static_cast<int>(std::lround(2.0 * M_PI * r));
  nb = std::max(4 * granularity, (nb / granularity) * granularity);
  return nb;
}

namespace {

// Boundary position for angle theta: radial projection of Psi(e^{i theta})
// onto the sphere of radius 1 - eps, in Poincare ball coordinates.
Vec3 boundary_ball_point(const LaurentMap& psi, double eps, double theta) {
  const cplx w = psi.eval(std::polar(1.0, theta));
  const Vec3 u = ideal_sphere_point(BoundaryPoint(w));
  return (1.0 - eps) * u;
}

// Concentric layout with ring counts proportional to the ring index, which
// keeps the flat triangles near-equilateral all the way to the center.
struct RingLayout {
  int rings = 0;
  std::vector<int> start;
  std::vector<int> count;
  int total = 0;

  static RingLayout make(int rings, int outer_count) {
    RingLayout lay;
    lay.rings = rings;
    lay.start.resize(rings + 1);
    lay.count.resize(rings + 1);
    lay.count[0] = 1;
    lay.start[0] = 0;
    int at = 1;
    for (int k = 1; k <= rings; ++k) {
      lay.start[k] = at;
      lay.count[k] =
          std::max(6, static_cast<int>(std::lround(static_cast<double>(outer_count) * k / rings)));
      at += lay.count[k];
    }
    lay.count[rings] = outer_count;
    lay.total = at;
    return lay;
  }

  int index(int k, int j) const {
    if (k == 0) return 0;
    const int n = count[k];
    return start[k] + ((j % n) + n) % n;
  }
};

// Stitch consecutive rings by an angular two-pointer walk (handles unequal
// counts).
void stitch_rings(std::vector<std::array<int, 3>>& faces, const RingLayout& lay, int k) {
  const int na = lay.count[k], nb = lay.count[k + 1];
  const int ia = lay.start[k], ib = lay.start[k + 1];
  int i = 0, j = 0;
  while (i < na || j < nb) {
    const double next_inner = (i < na) ? (i + 1.0) / na : 1e9;
    const double next_outer = (j < nb) ? (j + 1.0) / nb : 1e9;
    if (next_outer <= next_inner) {
      faces.push_back({ib + j % nb, ib + (j + 1) % nb, ia + i % na});
      ++j;
    } else {
      faces.push_back({ia + (i + 1) % na, ia + i % na, ib + j % nb});
      ++i;
    }
  }
}

void build_structured_topology(TriMesh& mesh, const RingLayout& lay) {
  mesh.faces.clear();
  for (int j = 0; j < lay.count[1]; ++j)
    mesh.faces.push_back({0, lay.index(1, j), lay.index(1, j + 1)});
  for (int k = 1; k < lay.rings; ++k) stitch_rings(mesh.faces, lay, k);
  mesh.boundary.clear();
  for (int j = 0; j < lay.count[lay.rings]; ++j) mesh.boundary.push_back(lay.index(lay.rings, j));
  mesh.rings = lay.rings;
  mesh.boundary_samples = lay.count[lay.rings];
  mesh.flags.assign(mesh.vertices.size(), kFlagNone);
  for (int v : mesh.boundary) mesh.flags[v] |= kFlagBoundary;
  mesh.param.assign(mesh.vertices.size(), {-1, -1});
  mesh.param[0] = {0, 0};
  for (int k = 1; k <= lay.rings; ++k)
    for (int j = 0; j < lay.count[k]; ++j) mesh.param[lay.index(k, j)] = {k, j};
}

RingLayout layout_of(const TriMesh& mesh) {
  RingLayout lay;
  lay.rings = mesh.rings;
  lay.count.assign(mesh.rings + 1, 0);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const int ring = mesh.param[v][0];
    if (ring >= 0) lay.count[ring] = std::max(lay.count[ring], mesh.param[v][1] + 1);
  }
  lay.count[0] = 1;
  lay.start.assign(mesh.rings + 1, 0);
  int at = 1;
  for (int k = 1; k <= mesh.rings; ++k) {
    lay.start[k] = at;
    at += lay.count[k];
  }
  lay.total = at;
  return lay;
}

}  // namespace

TriMesh seed_mesh_sized(const Quasicircle& gamma, const SolverConfig& config, int rings, int nb) {
  if (!(config.eps > 1e-4 && config.eps < 0.2))
    throw solver_error("seed_mesh: eps outside (1e-4, 0.2)");
  if (rings < 2 || nb < 12) throw solver_error("seed_mesh: mesh too coarse");
  gamma.source.require_certificate();

  std::vector<Vec3> bpts(nb);
  for (int j = 0; j < nb; ++j)
    bpts[j] = boundary_ball_point(gamma.source, config.eps, 2.0 * M_PI * j / nb);

  const RingLayout lay = RingLayout::make(rings, nb);
  TriMesh mesh;
  mesh.eps = config.eps;
  mesh.vertices.resize(lay.total);

  // Interior: discrete Poisson-kernel average of the boundary positions,
  // evaluated at parameter radius k/rings. Positive weights keep the result a
  // convex combination, hence strictly inside the ball.
  Vec3 centroid{0, 0, 0};
  for (const Vec3& b : bpts) centroid = centroid + b * (1.0 / nb);
  mesh.vertices[0] = from_poincare_ball(centroid);
  for (int k = 1; k <= rings; ++k) {
    const double rho = static_cast<double>(k) / rings;
    for (int j = 0; j < lay.count[k]; ++j) {
      Vec3 pos{0, 0, 0};
      if (k == rings) {
        pos = bpts[j];
      } else {
        const double theta = 2.0 * M_PI * j / lay.count[k];
        double wsum = 0.0;
        for (int m = 0; m < nb; ++m) {
          const double phi = 2.0 * M_PI * m / nb;
          const double w =
              (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(theta - phi) + rho * rho);
          pos = pos + w * bpts[m];
          wsum += w;
        }
        pos = pos * (1.0 / wsum);
      }
      mesh.vertices[lay.index(k, j)] = from_poincare_ball(pos);
    }
  }

  build_structured_topology(mesh, lay);
  if (!mesh.is_disc()) throw solver_error("seed_mesh: triangulation is not a disc");
  mesh.compute_normals();
  return mesh;
}

TriMesh seed_mesh(const Quasicircle& gamma, const SolverConfig& config) {
  return seed_mesh_sized(gamma, config, config.finest_rings(),
                         config.finest_boundary_samples());
}

namespace {

// Gradient of the total angle-defect area. For a triangle with vertex angles
// alpha_i and side lengths l_e, dA = -sum_i d alpha_i; each angle follows the
// hyperbolic law of cosines, and for an edge e = (u, w),
//   grad_u l_e = (u cosh l_e - w)/sinh l_e,
// which is tangent at u. T_e below collects sum_i d alpha_i / d l_e.
void gradient_pass(const TriMesh& mesh, std::vector<MinkVec4>& grad, std::vector<double>* diag,
                   double* total_area) {
  grad.assign(mesh.vertex_count(), MinkVec4());
  if (diag) diag->assign(mesh.vertex_count(), 0.0);
  double area = 0.0;

  for (const auto& f : mesh.faces) {
    const MinkVec4& p0 = mesh.vertices[f[0]].v;
    const MinkVec4& p1 = mesh.vertices[f[1]].v;
    const MinkVec4& p2 = mesh.vertices[f[2]].v;

    const double c01 = std::max(1.0 + 1e-16, -mink_inner(p0, p1));
    const double c02 = std::max(1.0 + 1e-16, -mink_inner(p0, p2));
    const double c12 = std::max(1.0 + 1e-16, -mink_inner(p1, p2));
    const double s01 = std::sqrt(c01 * c01 - 1.0);
    const double s02 = std::sqrt(c02 * c02 - 1.0);
    const double s12 = std::sqrt(c12 * c12 - 1.0);

    // cos of the angle at the vertex opposite edge (co), adjacent (c1,s1),(c2,s2)
    auto cos_angle = [](double co, double c1, double s1, double c2, double s2) {
      return std::clamp((c1 * c2 - co) / std::max(s1 * s2, 1e-300), -1.0, 1.0);
    };
    const double ca0 = cos_angle(c12, c01, s01, c02, s02);  // angle at vertex 0
    const double ca1 = cos_angle(c02, c01, s01, c12, s12);
    const double ca2 = cos_angle(c01, c02, s02, c12, s12);
    const double sa0 = std::sqrt(std::max(0.0, 1.0 - ca0 * ca0));
    const double sa1 = std::sqrt(std::max(0.0, 1.0 - ca1 * ca1));
    const double sa2 = std::sqrt(std::max(0.0, 1.0 - ca2 * ca2));
    area += std::max(0.0, M_PI - std::acos(ca0) - std::acos(ca1) - std::acos(ca2));
    if (sa0 < 1e-12 || sa1 < 1e-12 || sa2 < 1e-12) continue;  // degenerate; flips will handle

    // d alpha / d l for (angle; opposite o, adjacent b, c):
    //   d a/d o = sinh o / (sin a sinh b sinh c)
    //   d a/d b = -(cosh o cosh b - cosh c)/(sin a sinh^2 b sinh c)
    auto d_opp = [](double so, double sa, double sb, double sc) { return so / (sa * sb * sc); };
    auto d_adj = [](double co, double cb, double cc, double sa, double sb, double sc) {
      return -(co * cb - cc) / (sa * sb * sb * sc);
    };

    // T_e = sum over the three angles of d alpha / d l_e
    const double T01 = d_adj(c12, c01, c02, sa0, s01, s02)   // alpha0 w.r.t. l01
                       + d_adj(c02, c01, c12, sa1, s01, s12) // alpha1 w.r.t. l01
                       + d_opp(s01, sa2, s02, s12);          // alpha2 w.r.t. l01
    const double T02 = d_adj(c12, c02, c01, sa0, s02, s01)
                       + d_opp(s02, sa1, s01, s12)
                       + d_adj(c01, c02, c12, sa2, s02, s12);
    const double T12 = d_opp(s12, sa0, s01, s02)
                       + d_adj(c02, c12, c01, sa1, s12, s01)
                       + d_adj(c01, c12, c02, sa2, s12, s02);

    auto add_edge = [&](int u, int w, double cuw, double suw, double T) {
      const MinkVec4& pu = mesh.vertices[u].v;
      const MinkVec4& pw = mesh.vertices[w].v;
      // dA contribution: -T * grad l
      grad[u] += (pu * cuw - pw) * (-T / suw);
      grad[w] += (pw * cuw - pu) * (-T / suw);
    };
    add_edge(f[0], f[1], c01, s01, T01);
    add_edge(f[0], f[2], c02, s02, T02);
    add_edge(f[1], f[2], c12, s12, T12);

    if (diag) {
      // cotan-weight diagonal as a step preconditioner
      auto cot = [](double ca, double sa) { return std::clamp(ca / std::max(sa, 1e-9), 0.0, 50.0); };
      const double w12 = 0.5 * cot(ca0, sa0);
      const double w02 = 0.5 * cot(ca1, sa1);
      const double w01 = 0.5 * cot(ca2, sa2);
      (*diag)[f[0]] += w01 + w02;
      (*diag)[f[1]] += w01 + w12;
      (*diag)[f[2]] += w02 + w12;
    }
  }

  for (int v : mesh.boundary) grad[v] = MinkVec4();
  if (total_area) *total_area = area;
}

double total_area_only(const TriMesh& mesh) { return mesh.total_area(); }

}  // namespace

std::vector<MinkVec4> area_gradient(const TriMesh& mesh) {
  std::vector<MinkVec4> grad;
  gradient_pass(mesh, grad, nullptr, nullptr);
  return grad;
}

namespace {

// One intrinsic Delaunay pass; returns the number of flips applied. Faces
// already touched in this pass are left alone until the next rebuild of the
// edge map.
int delaunay_flip_pass(TriMesh& mesh) {
  int flips = 0;
  auto ef = mesh.edge_faces();
  std::set<std::pair<int, int>> existing;
  for (const auto& [edge, fs] : ef) existing.insert(edge);
  std::vector<bool> dirty(mesh.face_count(), false);

  for (const auto& [edge, fs] : ef) {
    if (fs[1] < 0) continue;  // boundary edge
    const int f1 = fs[0], f2 = fs[1];
    if (dirty[f1] || dirty[f2]) continue;
    auto opposite = [&](int f, int a, int b) {
      for (int v : mesh.faces[f])
        if (v != a && v != b) return v;
      return -1;
    };
    const int u = edge.first, v = edge.second;
    const int c = opposite(f1, u, v), d = opposite(f2, u, v);
    if (c < 0 || d < 0 || c == d) continue;
    auto key = std::minmax(c, d);
    if (existing.count({key.first, key.second})) continue;

    // Delaunay: flip when the two angles opposite the edge exceed pi.
    auto opp_angle = [&](int f, int apex) {
      const auto& t = mesh.faces[f];
      int k = 0;
      while (t[k] != apex) ++k;
      return mesh.face_angles(f)[k];
    };
    if (opp_angle(f1, c) + opp_angle(f2, d) <= M_PI + 1e-4) continue;

    // Rebuild the two faces around the new diagonal, preserving orientation.
    auto oriented = [&](int f, int a, int b) {
      const auto& t = mesh.faces[f];
      for (int e = 0; e < 3; ++e)
        if (t[e] == a && t[(e + 1) % 3] == b) return true;
      return false;
    };
    // Ensure f1 traverses u->v (otherwise swap roles of u and v).
    int uu = u, vv = v;
    if (!oriented(f1, uu, vv)) std::swap(uu, vv);
    mesh.faces[f1] = {uu, d, c};
    mesh.faces[f2] = {d, vv, c};
    dirty[f1] = dirty[f2] = true;
    existing.erase(edge);
    existing.insert({key.first, key.second});
    ++flips;
  }
  return flips;
}

}  // namespace

TriMesh minimize_area(TriMesh mesh, const SolverConfig& config, MinimizeStats* stats_out) {
  MinimizeStats stats;
  std::vector<MinkVec4> grad, velocity(mesh.vertex_count());
  std::vector<double> diag;
  std::vector<double> varea = mesh.vertex_areas_barycentric();

  double area = total_area_only(mesh);
  double tau = config.step;
  const double min_angle = config.min_angle_deg * M_PI / 180.0;

  for (int it = 0; it < config.max_iterations; ++it) {
    double dummy;
    gradient_pass(mesh, grad, &diag, &dummy);

    double gmax = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      if (mesh.is_boundary_vertex(v)) continue;
      const double g2 = mink_inner(grad[v], grad[v]);
      if (g2 > 0) gmax = std::max(gmax, std::sqrt(g2) / std::max(varea[v], 1e-12));
    }
    stats.final_gradient = gmax;
    stats.iterations = it;
    if (gmax < config.tol) {
      stats.converged = true;
      break;
    }

    // heavy-ball candidate with area backtracking
    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      TriMesh trial = mesh;
      for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.is_boundary_vertex(v)) continue;
        const double scale = tau / std::max(diag[v], 1e-9);
        const MinkVec4 step = velocity[v] * config.momentum - grad[v] * scale;
        trial.vertices[v] = HPoint(mesh.vertices[v].v + step);
      }
      const double trial_area = total_area_only(trial);
      const double atol = 1e-12 * std::max(1.0, area);
      if (trial_area <= area + atol) {
        for (int v = 0; v < mesh.vertex_count(); ++v)
          velocity[v] = trial.vertices[v].v - mesh.vertices[v].v;
        mesh.vertices = std::move(trial.vertices);
        stats.area_monotone = stats.area_monotone && trial_area <= area + atol;
        area = trial_area;
        tau = std::min(tau * 1.05, 4.0);
        accepted = true;
      } else {
        tau *= 0.5;
        std::fill(velocity.begin(), velocity.end(), MinkVec4());
        if (tau < 1e-14) break;
      }
    }
    if (!accepted) break;  // step collapsed; report whatever gradient we have

    if ((it + 1) % config.flip_every == 0) {
      int pass_flips = 0, rounds = 0, total = 0;
      do {
        pass_flips = delaunay_flip_pass(mesh);
        total += pass_flips;
        stats.flips += pass_flips;
      } while (pass_flips > 0 && ++rounds < 10);
      if (mesh.min_face_angle() < min_angle)
        throw degeneracy_error("minimize_area: mesh degenerated below the minimum angle");
      if (total > 0) {
        // the piecewise-geodesic surface changed; restart the descent state
        area = total_area_only(mesh);
        varea = mesh.vertex_areas_barycentric();
        std::fill(velocity.begin(), velocity.end(), MinkVec4());
      }
    }
  }

  stats.final_area = area;
  mesh.compute_normals();
  if (stats_out) *stats_out = stats;
  return mesh;
}

namespace {

// Angular interpolation along a stored ring polyline (hyperboloid points are
// blended linearly and renormalized).
MinkVec4 ring_interp(const std::vector<std::vector<MinkVec4>>& pos, int ring, double theta) {
  const auto& row = pos[ring];
  const int n = static_cast<int>(row.size());
  if (n == 1) return row[0];
  double a = theta / (2.0 * M_PI) * n;
  a -= std::floor(a / n) * n;
  const int j0 = static_cast<int>(a) % n;
  const double t = a - static_cast<int>(a);
  return HPoint(row[j0] * (1.0 - t) + row[(j0 + 1) % n] * t).v;
}

// Prolong a converged structured mesh: factor 2 in rings and angular samples.
TriMesh prolong(const TriMesh& coarse, const Quasicircle& gamma, const SolverConfig& config) {
  const RingLayout clay = layout_of(coarse);
  const int rf = coarse.rings * 2, nf = coarse.boundary_samples * 2;
  const RingLayout flay = RingLayout::make(rf, nf);

  std::vector<std::vector<MinkVec4>> pos(coarse.rings + 1);
  for (int k = 0; k <= coarse.rings; ++k) pos[k].resize(clay.count[k]);
  for (int v = 0; v < coarse.vertex_count(); ++v) {
    const auto [ring, angle] = coarse.param[v];
    if (ring >= 0) pos[ring][angle] = coarse.vertices[v].v;
  }

  TriMesh mesh;
  mesh.eps = config.eps;
  mesh.vertices.resize(flay.total);
  mesh.vertices[0] = HPoint(pos[0][0]);
  for (int k = 1; k <= rf; ++k)
    for (int j = 0; j < flay.count[k]; ++j) {
      const double theta = 2.0 * M_PI * j / flay.count[k];
      MinkVec4 p;
      if (k == rf) {
        p = from_poincare_ball(boundary_ball_point(gamma.source, config.eps, theta)).v;
      } else if (k % 2 == 0) {
        p = ring_interp(pos, k / 2, theta);
      } else {
        p = HPoint(ring_interp(pos, k / 2, theta) + ring_interp(pos, k / 2 + 1, theta)).v;
      }
      mesh.vertices[flay.index(k, j)] = HPoint(p);
    }

  build_structured_topology(mesh, flay);
  mesh.compute_normals();
  return mesh;
}

}  // namespace

std::vector<LevelRecord> solve_multilevel(const Quasicircle& gamma, const SolverConfig& config) {
  const int levels = std::max(1, config.levels);
  const int rf = config.finest_rings(), nf = config.finest_boundary_samples();

  std::vector<LevelRecord> records;
  TriMesh mesh;
  for (int level = 0; level < levels; ++level) {
    const int shift = levels - 1 - level;
    const int rings = rf >> shift, nb = nf >> shift;
    if (level == 0)
      mesh = seed_mesh_sized(gamma, config, rings, nb);
    else
      mesh = prolong(records.back().mesh, gamma, config);

    SolverConfig level_cfg = config;
    // coarse levels are cheap; converge them harder so prolongation is clean
    if (shift > 0) level_cfg.tol = config.tol * 0.5;

    LevelRecord rec;
    rec.rings = rings;
    rec.boundary_samples = nb;
    rec.mesh = minimize_area(std::move(mesh), level_cfg, &rec.stats);
    rec.mesh.flag_near_boundary(config.near_boundary_margin);
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace qd
