#pragma once

#include <string>
#include <vector>

#include "qd/chart.hpp"
#include "qd/solver.hpp"

namespace qd {

// One-parameter coefficient family c_k = t * direction, swept over
// [t_min, t_max] in `steps` rows.
struct SweepSpec {
  int coefficient_index = 1;
  cplx direction{1, 0};
  double t_min = 0.02;
  double t_max = 0.10;
  int steps = 5;
  int quasicircle_samples = 512;
  int hull_planes = 64;
  SolverConfig solver;
  ChartOptions chart;

  double parameter(int row) const {
    return steps == 1 ? t_min : t_min + (t_max - t_min) * row / (steps - 1.0);
  }
};

struct RunRecord {
  double t = 0.0;
  double bers_norm = 0.0;
  double k_upper = 0.0;      // Ahlfors-Weill upper bound (0 when unavailable)
  double teich_dist = 0.0;
  double sup_lambda = 0.0;
  double width = 0.0;
  double pde_residual = 0.0;
  double hull_violation = 0.0;
  double harmonic_residual = 0.0;
  bool converged = false;
  std::string error;  // per-run failure note, JSON only

  // per-level refinement data (coarse -> fine)
  std::vector<int> level_vertices;
  std::vector<double> level_sup_lambda;
  std::vector<double> level_pde_residual;
  std::vector<double> level_hull_violation;
};

struct VerificationReport {
  std::vector<RunRecord> rows;
  double c_fit = 0.0;           // least squares through the origin: lambda ~ C b
  double c_fit_residual = 0.0;  // rms of the fit over converged rows
  double c_log_fit = 0.0;       // lambda ~ C' log K
  double c_log_fit_residual = 0.0;
  std::string notes;

  int converged_rows() const;
};

// Full experiment: per parameter build the map, certify, compute the norm and
// width, solve the disc across levels, extract curvature, run the residual
// suite, then fit the slopes over converged rows. Per-row failures are
// recorded and the sweep continues; an empty converged set throws
// solver_error.
VerificationReport run_sweep(const SweepSpec& spec);

struct BoundCheck {
  bool pass = false;
  std::vector<std::string> lines;  // per-row margins and summary
};

// Row-wise curvature-vs-norm bound with the fitted slope and 20% slack,
// boundedness of sup_lambda / bers over the sweep, and the log-K analogue.
// Rows with vanishing norm are vacuous; a report with only such rows passes.
BoundCheck verify_bound(const VerificationReport& report);

// Curvature drift across truncation radii (the eps-refinement study).
struct EpsStudyRow {
  double eps = 0.0;
  double sup_lambda = 0.0;
  bool converged = false;
};
std::vector<EpsStudyRow> eps_refinement_study(const LaurentMap& psi, SolverConfig config,
                                              const std::vector<double>& eps_values);

}  // namespace qd
