#pragma once

#include <vector>

#include "qd/laurent.hpp"

namespace qd {

enum class HypDomain { disc, exterior_disc };

// Density of the curvature -1 Poincare metric: 2/(1-|z|^2) on the disc,
// 2/(|z|^2-1) on the exterior disc (inversion in the unit circle).
double poincare_density(cplx z, HypDomain domain);

// Samples of a holomorphic quadratic differential q = h dz^2 on a uniform
// polar annulus of its domain. Construction verifies holomorphy through a
// fourth-order discrete Cauchy-Riemann residual on the grid interior.
struct QuadDiffSample {
  HypDomain domain = HypDomain::exterior_disc;
  double r_min = 1.3, r_max = 2.3;
  int n_r = 0, n_theta = 0;
  std::vector<cplx> h;  // row-major, radius-major
  double cr_residual = 0.0;

  cplx at(int i, int j) const { return h[static_cast<std::size_t>(i) * n_theta + j]; }
};

// Sample S_psi on a uniform annulus in D* and validate the CR residual
// (threshold 1e-6; gross violations throw geometry_error).
QuadDiffSample sample_schwarzian(const LaurentMap& psi, int n_r = 192, int n_theta = 768);

struct BersGridSpec {
  int angular_samples = 512;
  int max_levels = 5;
  double rel_tol = 1e-4;  // agreement between successive refinement levels
};

struct BersEstimate {
  double value = 0.0;
  double refinement_gap = 0.0;
  int levels_used = 0;
  bool converged = false;
};

// Bers norm ||S_psi|| over D* in the inverse-square hyperbolic density norm:
// sup of (poincare density)^{-2} |S_psi| over a radially graded grid together
// with the analytic value at infinity, |z^4 S_psi| / 4 -> (3/2)|c_1|.
// Refines the radial grid until two levels agree within rel_tol; throws
// resolution_error (carrying the partial value) when max_levels is exhausted.
BersEstimate bers_norm(const LaurentMap& psi, const BersGridSpec& spec = {});

// Dilatation bound for the quasiconformal extension available when the Bers
// norm is below 1/2: K = (1 + 2b)/(1 - 2b). This is an upper bound for the
// extension dilatation, not the infimal K of the quasicircle.
double ahlfors_weill_K(double bers_norm_value);

// Teichmuller distance from the identity of a K-quasiconformal deformation.
double teich_distance_from_K(double K);

}  // namespace qd
