#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "qd/laurent.hpp"

namespace qd {

// Radial grid over D* that is uniform in s = log(r - 1), so it grades
// geometrically toward the unit circle and toward infinity at once.
struct FormsGridSpec {
  double s_min = -7.0;
  double s_max = 7.0;
  double h_s = 0.0625;
  int n_theta = 512;

  int n_r() const { return static_cast<int>((s_max - s_min) / h_s) + 1; }
  double radius(int i) const { return 1.0 + std::exp(s_min + i * h_s); }
};

// Embedding data at infinity in the Psi-chart over D*: the hyperbolic metric
// of the image domain pulls back to the Poincare metric of D*, so
// eta(z) = log(2/(|z|^2-1)); h = S_Psi; and a = |eigenvalue of B0*| comes from
// the eigenvalues of the assembled traceless shape operator
//   B0* = e^{-2 eta} [[-Re h, Im h], [Im h, Re h]].
// B* = B0* + E/2 has trace 1 by construction. The grid values are completed
// by the continuous limit at infinity, a -> |z^4 S_Psi|/4.
struct DataAtInfinity {
  FormsGridSpec grid;
  std::vector<double> eta;  // n_r x n_theta, radius-major
  std::vector<cplx> h;
  std::vector<double> a;
  double a_at_infinity = 0.0;
  double supA = 0.0;

  int n_r() const { return grid.n_r(); }
  int n_theta() const { return grid.n_theta; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * grid.n_theta + j; }
  cplx point(int i, int j) const {
    return std::polar(grid.radius(i), 2.0 * M_PI * j / grid.n_theta);
  }
  Eigen::Matrix2d istar(int i, int j) const;   // e^{2 eta} Id
  Eigen::Matrix2d bstar0(int i, int j) const;  // traceless part
  Eigen::Matrix2d bstar(int i, int j) const;   // B0* + Id/2

  void write_csv(std::ostream& os) const;  // re(z), im(z), eta, re(h), im(h), a
};

DataAtInfinity forms_at_infinity(const LaurentMap& psi, const FormsGridSpec& spec = {});

// Refines h_s until supA is stable within rel_tol between levels; throws
// resolution_error with the partial value if max_levels is exhausted.
DataAtInfinity forms_at_infinity_auto(const LaurentMap& psi, double rel_tol = 1e-4,
                                      int max_levels = 4, FormsGridSpec base = {});

// max |1 + K_{I*}| with the Gaussian curvature K of e^{2 eta}|dz|^2 computed
// by centered second differences in (s, theta) on the moderate annulus
// r in [1 + 2^{-4}, 4]; tr B* = 1, so for the hyperbolic I* this residual is
// pure discretization error and decays at second order.
double gauss_residual(const DataAtInfinity& data);

// Forms of the rho-equidistant leaf reconstructed from the data at infinity:
//   I_rho  = (1/2) e^{2 rho} I* + II* + (1/2) e^{-2 rho} III*
//   B_rho  = (e^rho E + e^{-rho} B*)^{-1} (-e^rho E + e^{-rho} B*)
//   II_rho = I_rho B_rho
struct LeafForms {
  double rho = 0.0;
  std::vector<Eigen::Matrix2d> I, II, B;  // per grid sample, radius-major
};

LeafForms leaf_forms(const DataAtInfinity& data, double rho);

// Eigenvalues of B_rho when B0* has eigenvalues +-a:
//   lambda  = (-2 e^{2 rho} + (2a + 1)) / (2 e^{2 rho} + (2a + 1))
//   lambda' = (-2 e^{2 rho} + (1 - 2a)) / (2 e^{2 rho} + (1 - 2a))
// Requires a < 1/2, which keeps both denominators positive.
struct LeafEigenvalues {
  double lambda = 0.0;
  double lambda_prime = 0.0;
};
LeafEigenvalues leaf_eigenvalues(double a, double rho);

// Width of the band between the last convex and first concave leaves:
// rho1 = log(supA + 1/2)/2, rho2 = log(1/2 - supA)/2, width = arctanh(2 supA).
struct WidthReport {
  double supA = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  double width = 0.0;
};
WidthReport foliation_width(double supA);
void write_json(const WidthReport& report, std::ostream& os);

// Relative gap between sup a^2 (matrix pipeline on the forms grid) and the
// squared Bers norm (independent graded-grid computation).
double det_b0_bers_consistency(const LaurentMap& psi);

}  // namespace qd
