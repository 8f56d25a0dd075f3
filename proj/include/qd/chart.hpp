#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qd/quasicircle.hpp"
#include "qd/solver.hpp"
#include "qd/trimesh.hpp"

namespace qd {

// Conformal parametrization sigma of a minimal disc over a flat triangulated
// parameter disc of radius r0 (a sub-disc of the ideal unit disc; the
// presented radius is gauge-calibrated so the conformal factor matches the
// complete-surface normalization). e^{2f} = ||d sigma||^2 / 2 in the ball
// metric. Node gradients are linear fits over one-rings of the fixed
// parameter triangulation.
struct ConformalChart {
  std::vector<cplx> nodes;                 // parameter coordinates, |z| <= r0
  std::vector<std::array<int, 3>> tris;
  std::vector<int> boundary_nodes;         // ordered outer ring
  std::vector<bool> is_boundary;
  std::vector<bool> is_inner;               // at least two rings from the rim
  std::vector<Vec3> sigma;                 // Poincare ball positions
  std::vector<Vec3> sigma_x, sigma_y;      // chart derivatives
  std::vector<double> f;                   // log conformal factor
  double r0 = 1.0;
  double conformality_defect = 0.0;        // relative, max over inner nodes
  double tension_residual = 0.0;
  bool converged = false;

  int node_count() const { return static_cast<int>(nodes.size()); }
};

struct ChartOptions {
  int rings = 24;
  int max_iterations = 40000;
  double step = 0.8;              // Jacobi relaxation factor
  double slide_step = 0.4;        // boundary sliding factor
  double displacement_tol = 1e-10;
  double conformality_tol = 2e-2; // invariant threshold checked by callers
};

// Flat triangulated disc with ~6k nodes on ring k; positions unset.
ConformalChart build_chart_domain(int rings);

// Fill sigma from an analytic map and finalize derivatives/factors. Used by
// oracle tests and synthetic charts.
void chart_finalize(ConformalChart& chart);
void chart_fill(ConformalChart& chart, const std::function<Vec3(cplx)>& sigma_of_z);

// Resample a converged mesh into a conformal chart: warm start through the
// structured seed labels, relax the harmonic map system with the boundary
// sliding along the analytic truncation curve (three nodes pinned), then
// calibrate the presented radius. Throws chart_error when the relaxation
// stalls or the conformality invariant fails.
ConformalChart resample_chart(const TriMesh& mesh, const Quasicircle& gamma,
                              const SolverConfig& solver_config, const ChartOptions& opts = {});

// max over inner nodes of the defect of the harmonic-map system
//   Lap sigma^l + Gamma^l_{jk}(sigma) (d sigma^j . d sigma^k) = 0
// normalized by ||d sigma||^2, with Lap and the first derivatives taken from
// an independent quadratic two-ring fit (not the relaxation stencil).
double harmonic_residual(const ConformalChart& chart);

// Slack of the conformal-factor comparison bounds:
//   upper: min over nodes of 4/(1-|z|^2)^2 - e^{2f}          (curvature < -1)
//   lower: min over nodes of e^{2f} - 4/(delta^2 (1-|z|^2)^2), delta^2 = 1 + sup_lambda^2
struct FactorBounds {
  double upper_slack = 0.0;
  double lower_slack = 0.0;
};
FactorBounds conformal_factor_bounds(const ConformalChart& chart, double sup_lambda);

}  // namespace qd
