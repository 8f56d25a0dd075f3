#include <doctest.h>

#include <sstream>

#include "qd/solver.hpp"
#include "support.hpp"

using namespace qd;

namespace {
SolverConfig small_config(int target = 2000, int levels = 2) {
  SolverConfig cfg;
  cfg.target_vertices = target;
  cfg.levels = levels;
  cfg.eps = 0.05;
  cfg.tol = 1e-6;
  return cfg;
}

Quasicircle circle_gamma() { return sample_quasicircle(LaurentMap::certified({}), 128); }
}  // namespace

TEST_CASE("seeded circle mesh is a disc on the truncation sphere") {
  const SolverConfig cfg = small_config();
  const TriMesh mesh = seed_mesh(circle_gamma(), cfg);
  CHECK(mesh.is_disc());
  CHECK(mesh.euler_characteristic() == 1);
  CHECK(mesh.boundary_loop_count() == 1);
  CHECK(mesh.vertex_count() >= 1500);
  for (int v : mesh.boundary) {
    const Vec3 b = to_poincare_ball(mesh.vertices[v]);
    CHECK(std::abs(b.norm() - (1.0 - cfg.eps)) < 1e-9);
    CHECK(std::abs(b.z) < 1e-12);  // equatorial
  }
  // interior is flat (z = 0) for the round circle: Poisson extension of an
  // equatorial curve stays in the plane
  for (const HPoint& p : mesh.vertices) CHECK(std::abs(to_poincare_ball(p).z) < 1e-12);
}

TEST_CASE("seeded ellipse mesh is a disc") {
  const Quasicircle gamma = sample_quasicircle(LaurentMap::certified({cplx(0.1, 0)}), 128);
  const TriMesh mesh = seed_mesh(gamma, small_config());
  CHECK(mesh.is_disc());
  CHECK(mesh.min_face_angle() > 15.0 * M_PI / 180.0);
}

TEST_CASE("eps out of range is rejected") {
  SolverConfig cfg = small_config();
  cfg.eps = 0.5;
  CHECK_THROWS_AS(seed_mesh(circle_gamma(), cfg), solver_error);
  cfg.eps = 1e-5;
  CHECK_THROWS_AS(seed_mesh(circle_gamma(), cfg), solver_error);
}

TEST_CASE("area gradient matches finite differences") {
  // perturbed ellipse seed, so the configuration is genuinely non-critical
  const Quasicircle gamma = sample_quasicircle(LaurentMap::certified({cplx(0.1, 0)}), 64);
  SolverConfig cfg = small_config(400, 1);
  TriMesh mesh = seed_mesh_sized(gamma, cfg, 6, 24);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.is_boundary_vertex(v)) continue;
    const Vec3 b = to_poincare_ball(mesh.vertices[v]);
    mesh.vertices[v] = from_poincare_ball(
        {b.x, b.y, b.z + 0.03 * std::sin(3.0 * b.x) * (0.9 - b.norm2())});
  }

  const std::vector<MinkVec4> grad = area_gradient(mesh);
  auto g = test::rng(157);
  const double h = 1e-6;
  int tested = 0;
  for (int v = 0; v < mesh.vertex_count() && tested < 6; v += 17) {
    if (mesh.is_boundary_vertex(v)) continue;
    ++tested;
    // random tangent direction at v
    MinkVec4 dir(test::uniform(g, -1, 1), test::uniform(g, -1, 1), test::uniform(g, -1, 1), 0);
    dir = dir + mesh.vertices[v].v * mink_inner(dir, mesh.vertices[v].v);
    dir = dir * (1.0 / std::sqrt(mink_inner(dir, dir)));

    TriMesh plus = mesh, minus = mesh;
    plus.vertices[v] = HPoint(mesh.vertices[v].v + dir * h);
    minus.vertices[v] = HPoint(mesh.vertices[v].v - dir * h);
    const double fd = (plus.total_area() - minus.total_area()) / (2.0 * h);
    const double an = mink_inner(grad[v], dir);
    CHECK(an == doctest::Approx(fd).epsilon(2e-4));
  }
  CHECK(tested >= 4);
}

TEST_CASE("flat disc is a solver fixed point") {
  const SolverConfig cfg = small_config(2500, 1);
  const TriMesh seed = seed_mesh(circle_gamma(), cfg);
  MinimizeStats stats;
  const TriMesh out = minimize_area(seed, cfg, &stats);
  CHECK(stats.converged);
  CHECK(stats.area_monotone);
  double max_disp = 0.0;
  for (int v = 0; v < out.vertex_count(); ++v)
    max_disp = std::max(max_disp, hyp_distance(seed.vertices[v], out.vertices[v]));
  CHECK(max_disp < 1e-6);
}

TEST_CASE("ellipse disc converges with bounded curvature scale") {
  const Quasicircle gamma = sample_quasicircle(LaurentMap::certified({cplx(0.05, 0)}), 128);
  const SolverConfig cfg = small_config(2500, 2);
  const auto records = solve_multilevel(gamma, cfg);
  REQUIRE(records.size() == 2);
  for (const auto& rec : records) {
    CHECK(rec.stats.converged);
    CHECK(rec.stats.area_monotone);
  }
  CHECK(records.back().mesh.is_disc());
  CHECK(records.back().mesh.min_face_angle() > 5.0 * M_PI / 180.0);
  // area should not be far from the flat-disc area at the same truncation
  CHECK(records.back().stats.final_area > 0.0);
}

TEST_CASE("off round trip") {
  const TriMesh mesh = seed_mesh(circle_gamma(), small_config(600, 1));
  std::stringstream ss;
  write_off(mesh, ss);
  CHECK(ss.str().rfind("OFF\n# model: klein\n", 0) == 0);
  const TriMesh back = read_off(ss);
  REQUIRE(back.vertex_count() == mesh.vertex_count());
  REQUIRE(back.face_count() == mesh.face_count());
  CHECK(back.boundary.size() == mesh.boundary.size());
  CHECK(back.is_disc());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    CHECK(test::coords_close(back.vertices[v], mesh.vertices[v], 1e-10));
}

TEST_CASE("near-boundary flags cover a band, not everything") {
  TriMesh mesh = seed_mesh(circle_gamma(), small_config(2000, 1));
  mesh.flag_near_boundary(1.0);
  int near = 0, reported = 0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.flags[v] & kFlagNearBoundary) ++near;
    if (mesh.is_reported_vertex(v)) ++reported;
  }
  CHECK(near >= mesh.boundary_samples / 2);
  CHECK(reported > mesh.vertex_count() / 3);
}
