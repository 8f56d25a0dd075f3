#include "qd/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qd/bers.hpp"

namespace qd {

Eigen::Matrix2d DataAtInfinity::istar(int i, int j) const {
  return std::exp(2.0 * eta[idx(i, j)]) * Eigen::Matrix2d::Identity();
}

Eigen::Matrix2d DataAtInfinity::bstar0(int i, int j) const {
  const double w = std::exp(-2.0 * eta[idx(i, j)]);
  const cplx hz = h[idx(i, j)];
  Eigen::Matrix2d b;
  b << -hz.real(), hz.imag(), hz.imag(), hz.real();
  return w * b;
}

Eigen::Matrix2d DataAtInfinity::bstar(int i, int j) const {
  return bstar0(i, j) + 0.5 * Eigen::Matrix2d::Identity();
}

void DataAtInfinity::write_csv(std::ostream& os) const {
  os << "re_z,im_z,eta,re_h,im_h,a\n";
  char line[160];
  for (int i = 0; i < n_r(); ++i)
    for (int j = 0; j < n_theta(); ++j) {
      const cplx z = point(i, j);
      std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", z.real(),
                    z.imag(), eta[idx(i, j)], h[idx(i, j)].real(), h[idx(i, j)].imag(),
                    a[idx(i, j)]);
      os << line;
    }
}

DataAtInfinity forms_at_infinity(const LaurentMap& psi, const FormsGridSpec& spec) {
  psi.require_certificate();
  DataAtInfinity d;
  d.grid = spec;
  const int nr = d.n_r(), nt = d.n_theta();
  d.eta.resize(static_cast<std::size_t>(nr) * nt);
  d.h.resize(d.eta.size());
  d.a.resize(d.eta.size());

  double sup = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = spec.radius(i);
    const double eta_r = std::log(2.0 / (r * r - 1.0));
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = d.idx(i, j);
      d.eta[k] = eta_r;
      d.h[k] = schwarzian(psi, d.point(i, j));
      // |eigenvalue| of the assembled B0* matrix (symmetric, trace free).
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
      es.computeDirect(d.bstar0(i, j));
      d.a[k] = std::max(std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[1]));
      sup = std::max(sup, d.a[k]);
    }
  }
  d.a_at_infinity = std::abs(psi.schwarzian_tail()) / 4.0;
  d.supA = std::max(sup, d.a_at_infinity);
  return d;
}

DataAtInfinity forms_at_infinity_auto(const LaurentMap& psi, double rel_tol, int max_levels,
                                      FormsGridSpec base) {
  DataAtInfinity current = forms_at_infinity(psi, base);
  for (int level = 1; level < max_levels; ++level) {
    FormsGridSpec finer = current.grid;
    finer.h_s /= 2.0;
    DataAtInfinity next = forms_at_infinity(psi, finer);
    const double gap = std::abs(next.supA - current.supA) / std::max(next.supA, 1e-12);
    if (gap <= rel_tol) return next;
    current = std::move(next);
  }
  throw resolution_error("forms_at_infinity_auto: supA did not stabilize", current.supA);
}

double gauss_residual(const DataAtInfinity& data) {
  const int nr = data.n_r(), nt = data.n_theta();
  const double hs = data.grid.h_s;
  const double hth = 2.0 * M_PI / nt;
  const double r_lo = 1.0 + std::exp2(-4), r_hi = 4.0;

  double worst = 0.0;
  for (int i = 1; i < nr - 1; ++i) {
    const double s = data.grid.s_min + i * hs;
    const double r = data.grid.radius(i);
    if (r < r_lo || r > r_hi) continue;
    const double es = std::exp(s);
    for (int j = 0; j < nt; ++j) {
      auto E = [&](int ii, int jj) { return data.eta[data.idx(ii, (jj % nt + nt) % nt)]; };
      const double e0 = E(i, j);
      const double ess = (E(i + 1, j) - 2.0 * e0 + E(i - 1, j)) / (hs * hs);
      const double es1 = (E(i + 1, j) - E(i - 1, j)) / (2.0 * hs);
      const double ett = (E(i, j + 1) - 2.0 * e0 + E(i, j - 1)) / (hth * hth);
      const double lap = (ess - es1) / (es * es) + es1 / (es * r) + ett / (r * r);
      const double K = -std::exp(-2.0 * e0) * lap;
      worst = std::max(worst, std::abs(1.0 + K));
    }
  }
  return worst;
}

LeafForms leaf_forms(const DataAtInfinity& data, double rho) {
  LeafForms out;
  out.rho = rho;
  const std::size_t n = data.eta.size();
  out.I.resize(n);
  out.II.resize(n);
  out.B.resize(n);
  const double ep = std::exp(rho), em = std::exp(-rho);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  for (int i = 0; i < data.n_r(); ++i)
    for (int j = 0; j < data.n_theta(); ++j) {
      const std::size_t k = data.idx(i, j);
      const Eigen::Matrix2d istar = data.istar(i, j);
      const Eigen::Matrix2d bstar = data.bstar(i, j);
      const Eigen::Matrix2d iistar = istar * bstar;
      const Eigen::Matrix2d iiistar = iistar * bstar;
      const Eigen::Matrix2d plus = ep * id + em * bstar;
      if (std::abs(plus.determinant()) < 1e-14)
        throw degeneracy_error("leaf_forms: singular leaf operator at rho = " +
                               std::to_string(rho));
      out.I[k] = 0.5 * ep * ep * istar + iistar + 0.5 * em * em * iiistar;
      out.B[k] = plus.inverse() * (-ep * id + em * bstar);
      out.II[k] = out.I[k] * out.B[k];
    }
  return out;
}

LeafEigenvalues leaf_eigenvalues(double a, double rho) {
  if (a < 0.0) throw domain_error("leaf_eigenvalues: a must be >= 0");
  if (a >= 0.5) throw domain_error("leaf_eigenvalues: requires a < 1/2");
  const double e2 = 2.0 * std::exp(2.0 * rho);
  LeafEigenvalues out;
  out.lambda = (-e2 + (2.0 * a + 1.0)) / (e2 + (2.0 * a + 1.0));
  out.lambda_prime = (-e2 + (1.0 - 2.0 * a)) / (e2 + (1.0 - 2.0 * a));
  return out;
}

WidthReport foliation_width(double supA) {
  if (supA < 0.0) throw domain_error("foliation_width: supA must be >= 0");
  if (supA >= 0.5) throw domain_error("foliation_width: supA >= 1/2, out of regime");
  WidthReport w;
  w.supA = supA;
  w.rho1 = 0.5 * std::log(supA + 0.5);
  w.rho2 = 0.5 * std::log(0.5 - supA);
  w.width = w.rho1 - w.rho2;
  return w;
}

void write_json(const WidthReport& report, std::ostream& os) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "{\"supA\": %.12g, \"rho1\": %.12g, \"rho2\": %.12g, \"width\": %.12g}\n",
                report.supA, report.rho1, report.rho2, report.width);
  os << buf;
}

double det_b0_bers_consistency(const LaurentMap& psi) {
  DataAtInfinity data = forms_at_infinity_auto(psi);
  double sup_a2 = data.a_at_infinity * data.a_at_infinity;
  for (double av : data.a) sup_a2 = std::max(sup_a2, av * av);
  const double b = bers_norm(psi).value;
  return std::abs(sup_a2 - b * b) / std::max(b * b, 1e-12);
}

}  // namespace qd
