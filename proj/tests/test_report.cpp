#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qd/exporters.hpp"
#include "qd/report.hpp"
#include "support.hpp"

using namespace qd;

namespace {
SweepSpec tiny_spec() {
  SweepSpec spec;
  spec.t_min = 0.02;
  spec.t_max = 0.08;
  spec.steps = 3;
  spec.quasicircle_samples = 128;
  spec.hull_planes = 24;
  spec.solver.target_vertices = 700;
  spec.solver.levels = 2;
  spec.solver.eps = 0.05;
  spec.solver.tol = 2e-6;
  spec.chart.rings = 12;
  return spec;
}
}  // namespace

TEST_CASE("tiny sweep end to end") {
  const VerificationReport report = run_sweep(tiny_spec());
  REQUIRE(report.rows.size() == 3);
  CHECK(report.converged_rows() == 3);

  for (const RunRecord& r : report.rows) {
    CHECK(r.error.empty());
    CHECK(r.bers_norm == doctest::Approx(1.5 * r.t).epsilon(1e-9));
    // cross-module identity: width = arctanh(2 bers)
    CHECK(r.width == doctest::Approx(std::atanh(2.0 * r.bers_norm)).epsilon(1e-6));
    CHECK(r.k_upper > 1.0);
    CHECK(r.teich_dist == doctest::Approx(0.5 * std::log(r.k_upper)).epsilon(1e-12));
    CHECK(std::isfinite(r.sup_lambda));
    CHECK(std::isfinite(r.pde_residual));
    CHECK(std::isfinite(r.hull_violation));
    CHECK(std::isfinite(r.harmonic_residual));
    CHECK(r.level_vertices.size() == 2);
  }
  CHECK(report.c_fit > 0.0);

  SUBCASE("csv export: exact column order and determinism") {
    std::stringstream a, b;
    write_report_csv(report, a);
    write_report_csv(report, b);
    CHECK(a.str() == b.str());
    std::string header;
    std::stringstream h(a.str());
    std::getline(h, header);
    CHECK(header ==
          "t,bers_norm,k_upper,teich_dist,sup_lambda,width,pde_residual,hull_violation,"
          "harmonic_residual,converged");
  }

  SUBCASE("json mirrors the fields") {
    std::stringstream js;
    write_report_json(report, js);
    const nlohmann::json j = nlohmann::json::parse(js.str());
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0].contains("bers_norm"));
    CHECK(j["rows"][0].contains("sup_lambda"));
    CHECK(j["rows"][0].contains("converged"));
    CHECK(j.contains("c_fit"));
    CHECK(j["notes"].get<std::string>().find("K'") != std::string::npos);
  }

  SUBCASE("svg structure: one fit polyline, one marker per converged row") {
    std::stringstream svg;
    write_report_svg(report, svg);
    const std::string s = svg.str();
    std::size_t polylines = 0, markers = 0, pos = 0;
    while ((pos = s.find("<polyline", pos)) != std::string::npos) {
      ++polylines;
      ++pos;
    }
    pos = 0;
    while ((pos = s.find("<circle", pos)) != std::string::npos) {
      ++markers;
      ++pos;
    }
    CHECK(polylines == 1);
    CHECK(markers == 3);
  }

  SUBCASE("verify_bound passes and catches doctored rows") {
    const BoundCheck check = verify_bound(report);
    CHECK(check.pass);
    VerificationReport doctored = report;
    for (RunRecord& r : doctored.rows) r.sup_lambda *= 2.0;
    // the fit rescales with the rows; break one row only
    doctored = report;
    doctored.rows[2].sup_lambda *= 2.0;
    const BoundCheck failed = verify_bound(doctored);
    CHECK(!failed.pass);
  }

  SUBCASE("deterministic rerun is byte identical") {
    const VerificationReport again = run_sweep(tiny_spec());
    std::stringstream a, b;
    write_report_csv(report, a);
    write_report_csv(again, b);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("circle-only report passes vacuously") {
  SweepSpec spec = tiny_spec();
  spec.t_min = spec.t_max = 0.0;
  spec.steps = 1;
  const VerificationReport report = run_sweep(spec);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].converged);
  CHECK(report.rows[0].bers_norm == doctest::Approx(0.0));
  CHECK(report.rows[0].sup_lambda < 5e-3);
  CHECK(report.rows[0].width == doctest::Approx(0.0));
  const BoundCheck check = verify_bound(report);
  CHECK(check.pass);
}

TEST_CASE("empty report exports a bare header") {
  VerificationReport empty;
  std::stringstream ss;
  write_report_csv(empty, ss);
  CHECK(ss.str() ==
        "t,bers_norm,k_upper,teich_dist,sup_lambda,width,pde_residual,hull_violation,"
        "harmonic_residual,converged\n");
}

TEST_CASE("one-row report exports one data line") {
  VerificationReport rep;
  RunRecord r;
  r.t = 0.1;
  r.bers_norm = 0.15;
  r.converged = true;
  rep.rows.push_back(r);
  std::stringstream ss;
  write_report_csv(rep, ss);
  std::string line;
  std::getline(ss, line);  // header
  std::getline(ss, line);
  CHECK(line.rfind("0.1,0.15,", 0) == 0);
  CHECK(line.back() == '1');
  CHECK(!std::getline(ss, line));
}

TEST_CASE("insufficient meaningful rows raise") {
  VerificationReport rep;
  for (int i = 0; i < 2; ++i) {
    RunRecord r;
    r.t = 0.05 * (i + 1);
    r.bers_norm = 0.075 * (i + 1);
    r.sup_lambda = 0.1 * (i + 1);
    r.converged = true;
    rep.rows.push_back(r);
  }
  CHECK_THROWS_AS(verify_bound(rep), domain_error);
}

TEST_CASE("eps refinement study reports drift") {
  const LaurentMap psi = LaurentMap::certified({cplx(0.05, 0)});
  SolverConfig cfg;
  cfg.target_vertices = 700;
  cfg.levels = 1;
  const auto rows = eps_refinement_study(psi, cfg, {0.08, 0.05});
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.converged);
    CHECK(std::isfinite(row.sup_lambda));
  }
}
