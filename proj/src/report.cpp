#include "qd/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qd/curvature.hpp"
#include "qd/infinity.hpp"
#include "qd/residuals.hpp"

namespace qd {

int VerificationReport::converged_rows() const {
  int n = 0;
  for (const RunRecord& r : rows) n += r.converged ? 1 : 0;
  return n;
}

VerificationReport run_sweep(const SweepSpec& spec) {
  if (spec.steps < 1) throw domain_error("run_sweep: steps must be >= 1");
  if (spec.coefficient_index < 1) throw domain_error("run_sweep: coefficient index must be >= 1");

  VerificationReport report;
  report.notes =
      "k_upper is the Ahlfors-Weill extension bound, an upper bound for the infimal "
      "dilatation; a non-conformal extension may have maximal dilatation K' in [K, 2K]. "
      "Multiplicity of minimal discs is not probed: the solver follows a single "
      "deterministic seed.";

  const SupportPlane reference_plane(MinkVec4(0, 0, 1, 0), +1);

  for (int row = 0; row < spec.steps; ++row) {
    RunRecord rec;
    rec.t = spec.parameter(row);
    try {
      std::vector<cplx> coeffs(spec.coefficient_index, cplx(0, 0));
      coeffs[spec.coefficient_index - 1] = rec.t * spec.direction;
      LaurentMap psi = LaurentMap::certified(std::move(coeffs));
      Quasicircle gamma = sample_quasicircle(psi, spec.quasicircle_samples);

      rec.bers_norm = gamma.bers;
      if (gamma.k_upper) {
        rec.k_upper = *gamma.k_upper;
        rec.teich_dist = teich_distance_from_K(rec.k_upper);
      }

      const DataAtInfinity data = forms_at_infinity_auto(psi);
      if (data.supA < 0.5) rec.width = foliation_width(data.supA).width;

      const std::vector<LevelRecord> levels = solve_multilevel(gamma, spec.solver);
      bool all_converged = true;
      for (const LevelRecord& lvl : levels) {
        all_converged = all_converged && lvl.stats.converged;
        rec.level_vertices.push_back(lvl.mesh.vertex_count());
        rec.level_sup_lambda.push_back(principal_curvatures(lvl.mesh).sup_lambda);
        rec.level_pde_residual.push_back(pde_residual(lvl.mesh, reference_plane));
        rec.level_hull_violation.push_back(hull_containment(lvl.mesh, gamma, spec.hull_planes));
      }
      const TriMesh& fine = levels.back().mesh;
      rec.sup_lambda = rec.level_sup_lambda.back();
      rec.pde_residual = rec.level_pde_residual.back();
      rec.hull_violation = rec.level_hull_violation.back();

      const ConformalChart chart = resample_chart(fine, gamma, spec.solver, spec.chart);
      rec.harmonic_residual = harmonic_residual(chart);
      rec.converged = all_converged;
    } catch (const error& e) {
      rec.error = e.what();
      rec.converged = false;
    }
    report.rows.push_back(std::move(rec));
  }

  if (report.converged_rows() == 0)
    throw solver_error("run_sweep: no run converged");

  // Least squares through the origin over converged rows.
  double sbb = 0, sbl = 0, skk = 0, skl = 0;
  int n = 0;
  for (const RunRecord& r : report.rows) {
    if (!r.converged) continue;
    sbb += r.bers_norm * r.bers_norm;
    sbl += r.bers_norm * r.sup_lambda;
    const double lk = r.k_upper > 0 ? std::log(r.k_upper) : 0.0;
    skk += lk * lk;
    skl += lk * r.sup_lambda;
    ++n;
  }
  report.c_fit = sbb > 0 ? sbl / sbb : 0.0;
  report.c_log_fit = skk > 0 ? skl / skk : 0.0;
  double rb = 0, rk = 0;
  for (const RunRecord& r : report.rows) {
    if (!r.converged) continue;
    const double db = r.sup_lambda - report.c_fit * r.bers_norm;
    const double lk = r.k_upper > 0 ? std::log(r.k_upper) : 0.0;
    const double dk = r.sup_lambda - report.c_log_fit * lk;
    rb += db * db;
    rk += dk * dk;
  }
  report.c_fit_residual = n ? std::sqrt(rb / n) : 0.0;
  report.c_log_fit_residual = n ? std::sqrt(rk / n) : 0.0;
  return report;
}

BoundCheck verify_bound(const VerificationReport& report) {
  BoundCheck check;
  std::vector<const RunRecord*> meaningful;
  bool any_converged = false;
  for (const RunRecord& r : report.rows) {
    if (!r.converged) continue;
    any_converged = true;
    if (r.bers_norm > 1e-12) meaningful.push_back(&r);
  }
  if (meaningful.empty()) {
    if (!any_converged) throw domain_error("verify_bound: no converged rows");
    check.pass = true;
    check.lines.push_back("all rows have vanishing norm: vacuous pass");
    return check;
  }
  if (meaningful.size() < 3)
    throw domain_error("verify_bound: need at least 3 converged rows with positive norm");

  const double slack = 1.2;
  bool pass = true;
  char buf[256];

  double max_ratio = 0.0;
  std::vector<double> ratios;
  for (const RunRecord* r : meaningful) ratios.push_back(r->sup_lambda / r->bers_norm);
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  max_ratio = sorted.back();

  for (std::size_t i = 0; i < meaningful.size(); ++i) {
    const RunRecord& r = *meaningful[i];
    const double arg = 1.0 - report.c_fit * r.bers_norm * r.bers_norm;
    double bound = std::numeric_limits<double>::infinity();
    if (arg > 0) bound = slack * report.c_fit * r.bers_norm / std::sqrt(arg);
    const bool ok_row = r.sup_lambda <= bound;
    const double logk = r.k_upper > 0 ? std::log(r.k_upper) : 0.0;
    const double bound_log = slack * report.c_log_fit * logk;
    const bool ok_log = logk > 0 && r.sup_lambda <= bound_log;
    pass = pass && ok_row && ok_log;
    std::snprintf(buf, sizeof buf,
                  "t=%.4g bers=%.6g lambda=%.6g bound=%.6g margin=%.3g logK-bound=%.6g "
                  "margin=%.3g %s",
                  r.t, r.bers_norm, r.sup_lambda, bound, bound - r.sup_lambda, bound_log,
                  bound_log - r.sup_lambda, (ok_row && ok_log) ? "ok" : "FAIL");
    check.lines.push_back(buf);
  }

  const bool bounded = max_ratio <= 2.0 * median;
  pass = pass && bounded;
  std::snprintf(buf, sizeof buf, "ratio sup_lambda/bers in [%.6g, %.6g], median %.6g: %s",
                sorted.front(), sorted.back(), median,
                bounded ? "bounded" : "FAIL (blow-up)");
  check.lines.push_back(buf);

  check.pass = pass;
  return check;
}

std::vector<EpsStudyRow> eps_refinement_study(const LaurentMap& psi, SolverConfig config,
                                              const std::vector<double>& eps_values) {
  std::vector<EpsStudyRow> rows;
  for (double eps : eps_values) {
    EpsStudyRow row;
    row.eps = eps;
    try {
      config.eps = eps;
      Quasicircle gamma = sample_quasicircle(psi, 512);
      const std::vector<LevelRecord> levels = solve_multilevel(gamma, config);
      row.sup_lambda = principal_curvatures(levels.back().mesh).sup_lambda;
      row.converged = levels.back().stats.converged;
    } catch (const error&) {
      row.converged = false;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qd
