#include <doctest.h>

#include "qd/curvature.hpp"
#include "qd/residuals.hpp"
#include "qd/solver.hpp"
#include "support.hpp"

using namespace qd;

namespace {

SolverConfig cfg_of(int target, int levels) {
  SolverConfig cfg;
  cfg.target_vertices = target;
  cfg.levels = levels;
  cfg.eps = 0.05;
  cfg.tol = 1e-6;
  return cfg;
}

TriMesh solved_mesh(double c1, int target, int levels) {
  std::vector<cplx> coeffs;
  if (c1 != 0.0) coeffs = {cplx(c1, 0)};
  const Quasicircle gamma = sample_quasicircle(LaurentMap::certified(coeffs), 128);
  return solve_multilevel(gamma, cfg_of(target, levels)).back().mesh;
}

}  // namespace

TEST_CASE("totally geodesic disc has vanishing principal curvatures") {
  const TriMesh mesh = solved_mesh(0.0, 2500, 1);
  const CurvatureReport rep = principal_curvatures(mesh);
  CHECK(rep.reported > 0);
  CHECK(rep.sup_lambda < 5e-3);
  CHECK(rep.max_trace_abs < 5e-2);
}

TEST_CASE("synthetic equidistant surface has B = -tanh(t) E") {
  // the sinh-distance identity is probed before any minimality is used
  const double t = 0.3;
  const TriMesh mesh = test::equidistant_surface_mesh(t);
  const CurvatureReport rep = principal_curvatures(mesh);
  const double expected = std::tanh(t);
  int checked = 0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.is_reported_vertex(v) || (rep.flags[v] & kFlagDegenerateRing)) continue;
    CHECK(rep.lambda[v] == doctest::Approx(expected).epsilon(0.02));
    // both eigenvalues have the same sign here: |tr B| = 2 tanh t
    CHECK(rep.trace_abs[v] == doctest::Approx(2.0 * expected).epsilon(0.05));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("the two curvature estimators agree") {
  const TriMesh mesh = solved_mesh(0.1, 2500, 2);
  const CurvatureReport a = principal_curvatures(mesh);
  const CurvatureReport b = curvature_quadratic_fit(mesh);
  int compared = 0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.is_reported_vertex(v)) continue;
    if (a.flags[v] & kFlagDegenerateRing || b.flags[v] & kFlagDegenerateRing) continue;
    if (a.lambda[v] < 0.01) continue;
    CHECK(std::abs(a.lambda[v] - b.lambda[v]) / a.lambda[v] < 0.10);
    ++compared;
  }
  CHECK(compared > 20);
  CHECK(a.sup_lambda == doctest::Approx(b.sup_lambda).epsilon(0.10));
}

TEST_CASE("pde residual of the sinh distance") {
  const TriMesh flat = solved_mesh(0.0, 2500, 1);
  SUBCASE("u = 0 identically: residual is exactly zero") {
    const SupportPlane own(MinkVec4(0, 0, 1, 0));
    CHECK(pde_residual(flat, own) == 0.0);
  }
  SUBCASE("disjoint plane: small residual, decreasing under refinement") {
    // plane z3 = const, pushed off the surface by a boost
    const Isometry push = Isometry::boost(2, 0.8);
    const SupportPlane far_plane = push.apply(SupportPlane(MinkVec4(0, 0, 1, 0)));
    const TriMesh coarse = solved_mesh(0.0, 700, 1);
    const double res_coarse = pde_residual(coarse, far_plane);
    const double res_fine = pde_residual(flat, far_plane);
    CHECK(res_fine < 5e-2);
    CHECK(res_fine < res_coarse);
  }
  SUBCASE("non-minimal equidistant surface is a negative control") {
    const TriMesh equi = test::equidistant_surface_mesh(0.3);
    const SupportPlane base(MinkVec4(0, 0, 1, 0));
    // u = sinh(t) constant, so |Lap u - 2u|/(1+|u|) = 2 sinh t/(1+sinh t)
    const double expected = 2.0 * std::sinh(0.3) / (1.0 + std::sinh(0.3));
    CHECK(pde_residual(equi, base) == doctest::Approx(expected).epsilon(0.05));
    CHECK(pde_residual(equi, base) > 0.2);
  }
}

TEST_CASE("convex hull containment") {
  const Quasicircle circle = sample_quasicircle(LaurentMap::certified({}), 256);
  SUBCASE("circle: the surface is the hull") {
    const TriMesh mesh = solved_mesh(0.0, 2000, 1);
    const double violation = hull_containment(mesh, circle, 32);
    CHECK(std::abs(violation) < 1e-9);
  }
  SUBCASE("ellipse disc stays essentially inside") {
    const Quasicircle gamma = sample_quasicircle(LaurentMap::certified({cplx(0.1, 0)}), 256);
    const TriMesh mesh = solved_mesh(0.1, 2000, 2);
    CHECK(hull_containment(mesh, gamma, 48) > -5e-2);
  }
  SUBCASE("translated mesh is caught") {
    TriMesh mesh = solved_mesh(0.0, 700, 1);
    const Isometry shift = Isometry::boost(2, 0.5);
    for (HPoint& p : mesh.vertices) p = shift.apply(p);
    CHECK(hull_containment(mesh, circle, 32) < -0.1);
  }
  SUBCASE("proxy orientation: boundary rays sit on the nonnegative side") {
    const ConvexHullProxy proxy = build_hull_proxy(circle, 24);
    CHECK(proxy.planes.size() >= 12);
    for (const SupportPlane& P : proxy.planes)
      for (const MinkVec4& ray : circle.null_rays())
        CHECK(P.orientation * mink_inner(ray, P.p) > -1e-8);
  }
}

TEST_CASE("schauder ratio") {
  const Isometry push = Isometry::boost(2, 0.6);
  const SupportPlane far_plane = push.apply(SupportPlane(MinkVec4(0, 0, 1, 0)));
  SUBCASE("u = 0 on its own plane gives ratio 0 by convention") {
    const TriMesh mesh = solved_mesh(0.0, 1200, 1);
    const SupportPlane own(MinkVec4(0, 0, 1, 0));
    CHECK(schauder_ratio(mesh, 0, own, 0.6) == 0.0);
  }
  SUBCASE("finite and stable under refinement") {
    const TriMesh coarse = solved_mesh(0.0, 1200, 1);
    const TriMesh fine = solved_mesh(0.0, 4500, 1);
    const double r_coarse = schauder_ratio(coarse, 0, far_plane, 0.8);
    const double r_fine = schauder_ratio(fine, 0, far_plane, 0.8);
    CHECK(r_coarse > 0.0);
    CHECK(std::abs(r_fine - r_coarse) / r_coarse < 0.2);
  }
  SUBCASE("bounded along the small-coefficient family") {
    std::vector<double> ratios;
    for (double c : {0.02, 0.05, 0.1}) {
      const TriMesh mesh = solved_mesh(c, 1200, 1);
      ratios.push_back(schauder_ratio(mesh, 0, far_plane, 0.8));
    }
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(lo > 0.0);
    CHECK(hi / lo < 3.0);
  }
  SUBCASE("ball reaching the boundary raises") {
    const TriMesh mesh = solved_mesh(0.0, 700, 1);
    CHECK_THROWS_AS(schauder_ratio(mesh, 0, far_plane, 50.0), domain_error);
  }
}
