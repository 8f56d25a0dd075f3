#include <doctest.h>

#include "qd/chart.hpp"
#include "qd/curvature.hpp"
#include "support.hpp"

using namespace qd;

namespace {

// identity inclusion of a piece of the equatorial geodesic plane, the
// closed-form conformal harmonic parametrization
ConformalChart flat_chart(int rings, double scale) {
  ConformalChart chart = build_chart_domain(rings);
  chart_fill(chart, [scale](cplx z) { return Vec3(scale * z.real(), scale * z.imag(), 0.0); });
  return chart;
}

}  // namespace

TEST_CASE("flat chart satisfies the harmonic system exactly") {
  const ConformalChart chart = flat_chart(50, 0.85);
  CHECK(chart.conformality_defect < 1e-10);
  CHECK(harmonic_residual(chart) < 1e-3);
  CHECK(harmonic_residual(chart) < 1e-8);  // exact solution: only fit noise remains
}

TEST_CASE("non-harmonic perturbation drives the residual up") {
  ConformalChart chart = flat_chart(24, 0.8);
  const double base = harmonic_residual(chart);
  for (int v = 0; v < chart.node_count(); ++v) {
    const double r2 = std::norm(chart.nodes[v]);
    chart.sigma[v].z += 0.05 * (1.0 - r2) * (1.0 - r2);
  }
  chart_finalize(chart);
  CHECK(harmonic_residual(chart) > 100.0 * std::max(base, 1e-12));
  CHECK(harmonic_residual(chart) > 1e-3);
}

TEST_CASE("conformal factor bounds") {
  SUBCASE("complete flat chart attains equality") {
    const ConformalChart chart = flat_chart(40, 1.0);  // sigma = id on the 0.95-subdisc? no: unit
    // identity inclusion: e^{2f} = 4/(1-|z|^2)^2 exactly
    const FactorBounds fb = conformal_factor_bounds(chart, 0.0);
    CHECK(fb.upper_slack > -1e-6);
    CHECK(fb.lower_slack > -1e-6);
    CHECK(fb.upper_slack < 1e-3);
    CHECK(fb.lower_slack < 1e-3);
  }
  SUBCASE("synthetic violating chart reports negative slack") {
    ConformalChart chart = flat_chart(24, 0.8);
    for (int v = 0; v < chart.node_count(); ++v)
      chart.f[v] = std::log(2.0 / (1.0 - std::norm(chart.nodes[v]))) + 0.5;
    const FactorBounds fb = conformal_factor_bounds(chart, 0.0);
    CHECK(fb.upper_slack < 0.0);
  }
}

TEST_CASE("resampled chart of the flat disc recovers the truncation gauge") {
  const Quasicircle gamma = sample_quasicircle(LaurentMap::certified({}), 128);
  SolverConfig cfg;
  cfg.eps = 0.05;
  cfg.target_vertices = 2000;
  cfg.levels = 1;
  const TriMesh mesh = solve_multilevel(gamma, cfg).back().mesh;

  ChartOptions copts;
  copts.rings = 16;
  const ConformalChart chart = resample_chart(mesh, gamma, cfg, copts);
  CHECK(chart.conformality_defect < 2e-2);
  // the truncated flat disc occupies the (1 - eps)-subdisc of its own
  // uniformization, so the calibrated radius should land there
  CHECK(chart.r0 == doctest::Approx(1.0 - cfg.eps).epsilon(5e-3));
  CHECK(harmonic_residual(chart) < 1e-3);

  const FactorBounds fb = conformal_factor_bounds(chart, 0.0);
  CHECK(fb.upper_slack > -1e-3);
  CHECK(fb.lower_slack > -1e-3);
}

TEST_CASE("resampled chart of a perturbed disc passes the factor window") {
  const Quasicircle gamma = sample_quasicircle(LaurentMap::certified({cplx(0.1, 0)}), 128);
  SolverConfig cfg;
  cfg.eps = 0.05;
  cfg.target_vertices = 2500;
  cfg.levels = 2;
  const TriMesh mesh = solve_multilevel(gamma, cfg).back().mesh;
  const double sup_lambda = principal_curvatures(mesh).sup_lambda;

  ChartOptions copts;
  copts.rings = 16;
  const ConformalChart chart = resample_chart(mesh, gamma, cfg, copts);
  CHECK(chart.conformality_defect < 2e-2);

  const FactorBounds fb = conformal_factor_bounds(chart, sup_lambda);
  CHECK(fb.upper_slack > -1e-3);
  CHECK(fb.lower_slack > -1e-3);

  SUBCASE("harmonic residual decreases under chart refinement") {
    ChartOptions fine = copts;
    fine.rings = 32;
    const ConformalChart chart2 = resample_chart(mesh, gamma, cfg, fine);
    CHECK(harmonic_residual(chart2) < harmonic_residual(chart) * 1.05);
  }
}
