#include <doctest.h>

#include "qd/geom.hpp"
#include "support.hpp"

using namespace qd;

TEST_CASE("minkowski inner product signature") {
  CHECK(mink_inner({0, 0, 0, 1}, {0, 0, 0, 1}) == doctest::Approx(-1.0));
  CHECK(mink_inner({1, 0, 0, 0}, {1, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(mink_inner({1, 0, 0, 1}, {0, 1, 0, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("mink_cross is orthogonal to its arguments") {
  auto g = test::rng(7);
  for (int i = 0; i < 20; ++i) {
    const MinkVec4 a(test::uniform(g, -1, 1), test::uniform(g, -1, 1), test::uniform(g, -1, 1),
                     test::uniform(g, -1, 1));
    const MinkVec4 b(test::uniform(g, -1, 1), test::uniform(g, -1, 1), test::uniform(g, -1, 1),
                     test::uniform(g, -1, 1));
    const MinkVec4 c(test::uniform(g, -1, 1), test::uniform(g, -1, 1), test::uniform(g, -1, 1),
                     test::uniform(g, -1, 1));
    const MinkVec4 n = mink_cross(a, b, c);
    CHECK(std::abs(mink_inner(n, a)) < 1e-12);
    CHECK(std::abs(mink_inner(n, b)) < 1e-12);
    CHECK(std::abs(mink_inner(n, c)) < 1e-12);
  }
}

TEST_CASE("hyp_distance basics") {
  const HPoint o;
  CHECK(hyp_distance(o, o) == doctest::Approx(0.0));
  const HPoint q(MinkVec4(0, 0, std::sinh(1.0), std::cosh(1.0)));
  CHECK(hyp_distance(o, q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hyp_distance(q, o) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hyp_distance rejects off-hyperboloid points") {
  HPoint a, b;
  a.v = MinkVec4(0, 0, 0, 0.5);  // not on the quadric
  b.v = MinkVec4(0, 0, 0, 0.5);
  CHECK_THROWS_AS(hyp_distance(a, b), geometry_error);
}

TEST_CASE("distance is isometry invariant") {
  auto g = test::rng(11);
  for (int i = 0; i < 200; ++i) {
    const HPoint p = test::random_hpoint(g), q = test::random_hpoint(g);
    const Isometry T = test::random_isometry(g);
    REQUIRE(T.valid());
    CHECK(hyp_distance(T.apply(p), T.apply(q)) ==
          doctest::Approx(hyp_distance(p, q)).epsilon(1e-9));
  }
}

TEST_CASE("cosh of distance equals |inner| (invariant)") {
  auto g = test::rng(13);
  for (int i = 0; i < 1000; ++i) {
    const HPoint p = test::random_hpoint(g), q = test::random_hpoint(g);
    CHECK(std::cosh(hyp_distance(p, q)) ==
          doctest::Approx(std::abs(mink_inner(p.v, q.v))).epsilon(1e-10));
  }
}

TEST_CASE("plane signed sinh distance") {
  const SupportPlane P(MinkVec4(0, 0, 1, 0));
  const HPoint on_plane(MinkVec4(std::sinh(0.7), 0, 0, std::cosh(0.7)));
  CHECK(plane_signed_sinh_distance(on_plane, P) == doctest::Approx(0.0));
  const double t = 0.9;
  const HPoint x(MinkVec4(0, 0, std::sinh(t), std::cosh(t)));
  CHECK(plane_signed_sinh_distance(x, P) == doctest::Approx(std::sinh(t)).epsilon(1e-12));
}

TEST_CASE("plane distance against brute-force projection oracle") {
  auto g = test::rng(17);
  for (int i = 0; i < 8; ++i) {
    const HPoint x = test::random_hpoint(g, 1.2);
    SupportPlane P(MinkVec4(test::uniform(g, -1, 1), test::uniform(g, -1, 1),
                            test::uniform(g, 0.5, 1.5), test::uniform(g, -0.4, 0.4)));
    const double sinh_d = plane_signed_sinh_distance(x, P);
    const double oracle = test::plane_distance_bruteforce(x, P);
    CHECK(std::abs(std::asinh(sinh_d)) == doctest::Approx(oracle).epsilon(1e-4));
  }
}

TEST_CASE("plane distance commutes with isometries") {
  auto g = test::rng(19);
  for (int i = 0; i < 100; ++i) {
    const HPoint x = test::random_hpoint(g);
    const SupportPlane P(MinkVec4(test::uniform(g, -1, 1), test::uniform(g, -1, 1),
                                  test::uniform(g, 0.8, 1.5), test::uniform(g, -0.5, 0.5)));
    const Isometry T = test::random_isometry(g);
    CHECK(plane_signed_sinh_distance(T.apply(x), T.apply(P)) ==
          doctest::Approx(plane_signed_sinh_distance(x, P)).epsilon(1e-9));
  }
}

TEST_CASE("normal_flow") {
  const HPoint o;
  const MinkVec4 n(0, 0, 1, 0);
  SUBCASE("zero time is the identity") {
    const HPoint y = normal_flow(o, n, 0.0);
    CHECK(hyp_distance(o, y) == doctest::Approx(0.0));
  }
  SUBCASE("unit flow from the origin") {
    const HPoint y = normal_flow(o, n, 1.0);
    CHECK(y.v.x3 == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(y.v.x4 == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
  }
  SUBCASE("distance equals |rho|") {
    for (double rho : {-2.0, -0.3, 0.3, 2.0})
      CHECK(hyp_distance(o, normal_flow(o, n, rho)) ==
            doctest::Approx(std::abs(rho)).epsilon(1e-12));
  }
  SUBCASE("bad frame throws") {
    CHECK_THROWS_AS(normal_flow(o, MinkVec4(0, 0, 2, 0), 1.0), geometry_error);
    CHECK_THROWS_AS(normal_flow(o, MinkVec4(0, 0, 0.6, 0.6), 1.0), geometry_error);
  }
  SUBCASE("commutes with isometries") {
    auto g = test::rng(23);
    for (int i = 0; i < 50; ++i) {
      const HPoint x = test::random_hpoint(g);
      MinkVec4 dir(test::uniform(g, -1, 1), test::uniform(g, -1, 1), test::uniform(g, -1, 1), 0);
      dir = dir + x.v * mink_inner(dir, x.v);
      dir = dir * (1.0 / std::sqrt(mink_inner(dir, dir)));
      const double rho = test::uniform(g, -1.5, 1.5);
      const Isometry T = test::random_isometry(g);
      const HPoint lhs = T.apply(normal_flow(x, dir, rho));
      const HPoint rhs = normal_flow(T.apply(x), T.apply(dir), rho);
      CHECK(test::coords_close(lhs, rhs, 1e-9));
    }
  }
}

TEST_CASE("project_to_plane") {
  const SupportPlane P(MinkVec4(0, 0, 1, 0));
  SUBCASE("fixed point on the plane") {
    const HPoint x(MinkVec4(std::sinh(0.5), 0, 0, std::cosh(0.5)));
    CHECK(test::coords_close(project_to_plane(x, P), x, 1e-14));
  }
  SUBCASE("axis example") {
    const HPoint x(MinkVec4(0, 0, std::sinh(1.3), std::cosh(1.3)));
    const HPoint foot = project_to_plane(x, P);
    CHECK(test::coords_close(foot, HPoint(), 1e-14));
  }
  SUBCASE("foot lies on the plane") {
    auto g = test::rng(29);
    for (int i = 0; i < 100; ++i) {
      const HPoint x = test::random_hpoint(g);
      CHECK(std::abs(plane_signed_sinh_distance(project_to_plane(x, P), P)) < 1e-9);
    }
  }
  SUBCASE("projection is 1-Lipschitz") {
    auto g = test::rng(31);
    for (int i = 0; i < 1000; ++i) {
      const HPoint x = test::random_hpoint(g), y = test::random_hpoint(g);
      CHECK(hyp_distance(project_to_plane(x, P), project_to_plane(y, P)) <=
            hyp_distance(x, y) + 1e-9);
    }
  }
}

TEST_CASE("parallel planes distance profile") {
  SUBCASE("common perpendicular and degenerate cases") {
    CHECK(parallel_planes_distance_profile(0.0, 0.7).distance == doctest::Approx(0.7));
    CHECK(parallel_planes_distance_profile(1.3, 0.0).distance == doctest::Approx(0.0));
  }
  SUBCASE("frozen value at r = w = 1/2") {
    // high-precision evaluation of arctanh(cosh(1/2) tanh(1/2))
    const auto prof = parallel_planes_distance_profile(0.5, 0.5);
    CHECK(prof.distance == doctest::Approx(0.5778421700345446).epsilon(1e-10));
  }
  SUBCASE("the tanh and sinh forms agree") {
    auto g = test::rng(37);
    for (int i = 0; i < 1000; ++i) {
      const double r = test::uniform(g, 0, 2.0), w = test::uniform(g, 0, 1.0);
      if (std::cosh(r) * std::tanh(w) >= 1.0) continue;
      const auto prof = parallel_planes_distance_profile(r, w);
      CHECK(std::sinh(prof.distance) == doctest::Approx(prof.sinh_distance).epsilon(1e-12));
    }
  }
  SUBCASE("divergence outside the domain") {
    CHECK_THROWS_AS(parallel_planes_distance_profile(3.0, 1.0), domain_error);
  }
  SUBCASE("strictly increasing in both arguments") {
    double prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double d = parallel_planes_distance_profile(0.05 * i, 0.2).distance;
      CHECK(d > prev);
      prev = d;
    }
    prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double d = parallel_planes_distance_profile(0.4, 0.02 * i).distance;
      CHECK(d > prev);
      prev = d;
    }
  }
}

TEST_CASE("model conversions") {
  SUBCASE("origin to Klein") {
    const Vec3 k = to_klein(HPoint());
    CHECK(k.norm() < 1e-15);
  }
  SUBCASE("Klein affine chart") {
    const double r = 0.5;
    const HPoint h = from_klein({0, 0, r});
    const double f = 1.0 / std::sqrt(1.0 - r * r);
    CHECK(h.v.x3 == doctest::Approx(r * f).epsilon(1e-12));
    CHECK(h.v.x4 == doctest::Approx(f).epsilon(1e-12));
  }
  SUBCASE("round trips") {
    auto g = test::rng(41);
    for (int i = 0; i < 200; ++i) {
      const HPoint x = test::random_hpoint(g);
      CHECK(test::coords_close(x, from_klein(to_klein(x)), 1e-10));
      CHECK(test::coords_close(x, from_poincare_ball(to_poincare_ball(x)), 1e-10));
    }
  }
  SUBCASE("boundary chart: disc center is the lower pole") {
    const Vec3 u = ideal_sphere_point(BoundaryPoint(cplx(0, 0)));
    CHECK(u.x == doctest::Approx(0.0));
    CHECK(u.y == doctest::Approx(0.0));
    CHECK(u.z == doctest::Approx(-1.0));
  }
  SUBCASE("boundary round trips including infinity") {
    auto g = test::rng(43);
    for (int i = 0; i < 200; ++i) {
      const BoundaryPoint b(cplx(test::uniform(g, -3, 3), test::uniform(g, -3, 3)));
      const BoundaryPoint back = boundary_from_null(null_from_boundary(b));
      CHECK(!back.at_infinity);
      CHECK(std::abs(back.z - b.z) < 1e-10);
    }
    const BoundaryPoint inf = boundary_from_null(null_from_boundary(BoundaryPoint::infinity()));
    CHECK(inf.at_infinity);
  }
  SUBCASE("chart singularity is explicit, never NaN") {
    const BoundaryPoint b = boundary_from_sphere({0, 0, 1});
    CHECK(b.at_infinity);
  }
}

TEST_CASE("isometry factories preserve the form") {
  auto g = test::rng(47);
  for (int i = 0; i < 50; ++i) {
    const Isometry T = test::random_isometry(g);
    CHECK(T.form_defect() < 1e-12);
    const Isometry TI = T.compose(T.inverse());
    CHECK(TI.form_defect() < 1e-11);
    const HPoint x = test::random_hpoint(g);
    CHECK(test::coords_close(TI.apply(x), x, 1e-9));
  }
}
