#include "qd/chart.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace qd {

namespace {

int ring_count(int k) { return k == 0 ? 1 : 6 * k; }

// Stitch two concentric rings of sizes na (inner, starting at index ia) and
// nb (outer, at ib) by an angular two-pointer walk.
void stitch(std::vector<std::array<int, 3>>& tris, int ia, int na, int ib, int nb) {
  int i = 0, j = 0;
  auto ang = [](int idx, int n) { return 2.0 * M_PI * idx / n; };
  while (i < na || j < nb) {
    const double next_inner = (i < na) ? ang(i + 1, na) : 1e9;
    const double next_outer = (j < nb) ? ang(j + 1, nb) : 1e9;
    if (next_outer <= next_inner) {
      tris.push_back({ib + j % nb, ib + (j + 1) % nb, ia + i % na});
      ++j;
    } else {
      tris.push_back({ia + (i + 1) % na, ia + i % na, ib + j % nb});
      ++i;
    }
  }
}

struct FlatOperator {
  std::vector<std::vector<std::pair<int, double>>> w;  // cotan weights
  std::vector<double> wsum;
  std::vector<double> area;  // barycentric node area
};

FlatOperator build_flat_operator(const ConformalChart& chart) {
  const int n = chart.node_count();
  FlatOperator op;
  op.w.resize(n);
  op.wsum.assign(n, 0.0);
  op.area.assign(n, 0.0);
  std::map<std::pair<int, int>, double> acc;
  for (const auto& t : chart.tris) {
    const cplx a = chart.nodes[t[0]], b = chart.nodes[t[1]], c = chart.nodes[t[2]];
    const double area2 = std::abs((b - a).real() * (c - a).imag() -
                                  (b - a).imag() * (c - a).real());
    if (area2 < 1e-16) continue;
    for (int e = 0; e < 3; ++e) {
      const cplx p = chart.nodes[t[e]];
      const cplx q = chart.nodes[t[(e + 1) % 3]];
      const cplx r = chart.nodes[t[(e + 2) % 3]];
      // cot of angle at p opposite edge (q, r)
      const cplx u = q - p, v = r - p;
      const double cross = u.real() * v.imag() - u.imag() * v.real();
      const double cot = (u.real() * v.real() + u.imag() * v.imag()) / std::max(std::abs(cross), 1e-16);
      const int i = t[(e + 1) % 3], j = t[(e + 2) % 3];
      acc[{std::min(i, j), std::max(i, j)}] += 0.5 * cot;
      op.area[t[e]] += area2 / 6.0;
    }
  }
  for (const auto& [edge, weight] : acc) {
    op.w[edge.first].push_back({edge.second, weight});
    op.w[edge.second].push_back({edge.first, weight});
    op.wsum[edge.first] += weight;
    op.wsum[edge.second] += weight;
  }
  return op;
}

// Christoffel contraction of the Poincare ball metric:
//   Gamma^l_{jk} A^{jk} = g [2 (A s)_l - s_l tr A],  g = 2/(1-|s|^2),
// for A^{jk} = sx^j sx^k + sy^j sy^k.
Vec3 christoffel_term(const Vec3& s, const Vec3& sx, const Vec3& sy) {
  const double g = 2.0 / (1.0 - s.norm2());
  const double ax = sx.dot(s), ay = sy.dot(s);
  const double tr = sx.norm2() + sy.norm2();
  return g * (2.0 * (ax * sx + ay * sy) - tr * s);
}

// Per-node linear least-squares gradient weights over the one-ring.
struct GradientFit {
  std::vector<std::vector<std::pair<int, cplx>>> rows;  // value * (wx + i wy)

  void apply(const ConformalChart& chart, std::vector<Vec3>* gx, std::vector<Vec3>* gy) const {
    const int n = chart.node_count();
    gx->assign(n, Vec3());
    gy->assign(n, Vec3());
    for (int v = 0; v < n; ++v)
      for (const auto& [u, wgt] : rows[v]) {
        const Vec3 d = chart.sigma[u] - chart.sigma[v];
        (*gx)[v] = (*gx)[v] + wgt.real() * d;
        (*gy)[v] = (*gy)[v] + wgt.imag() * d;
      }
  }
};

GradientFit build_gradient_fit(const ConformalChart& chart) {
  const int n = chart.node_count();
  std::vector<std::set<int>> nbr(n);
  for (const auto& t : chart.tris)
    for (int e = 0; e < 3; ++e) {
      nbr[t[e]].insert(t[(e + 1) % 3]);
      nbr[t[(e + 1) % 3]].insert(t[e]);
    }
  GradientFit fit;
  fit.rows.resize(n);
  for (int v = 0; v < n; ++v) {
    const int m = static_cast<int>(nbr[v].size());
    Eigen::MatrixXd A(m, 2);
    std::vector<int> ids(nbr[v].begin(), nbr[v].end());
    for (int i = 0; i < m; ++i) {
      const cplx d = chart.nodes[ids[i]] - chart.nodes[v];
      A(i, 0) = d.real();
      A(i, 1) = d.imag();
    }
    const Eigen::MatrixXd pinv =
        (A.transpose() * A).ldlt().solve(Eigen::MatrixXd(A.transpose()));
    for (int i = 0; i < m; ++i) fit.rows[v].push_back({ids[i], cplx(pinv(0, i), pinv(1, i))});
  }
  return fit;
}

Vec3 boundary_curve(const LaurentMap& psi, double eps, double phi) {
  const cplx w = psi.eval(std::polar(1.0, phi));
  const double n2 = std::norm(w);
  const double D = n2 + 1.0;
  return Vec3(2.0 * w.real() / D, 2.0 * w.imag() / D, (n2 - 1.0) / D) * (1.0 - eps);
}

Vec3 boundary_curve_deriv(const LaurentMap& psi, double eps, double phi) {
  const cplx z = std::polar(1.0, phi);
  const cplx w = psi.eval(z);
  const cplx wd = cplx(0, 1) * z * psi.deriv(z);
  const double n2 = std::norm(w);
  const double D = n2 + 1.0;
  const double Dd = 2.0 * (w.real() * wd.real() + w.imag() * wd.imag());
  const double x1 = (2.0 * wd.real() * D - 2.0 * w.real() * Dd) / (D * D);
  const double x2 = (2.0 * wd.imag() * D - 2.0 * w.imag() * Dd) / (D * D);
  const double x3 = 2.0 * Dd / (D * D);
  return Vec3(x1, x2, x3) * (1.0 - eps);
}

}  // namespace

ConformalChart build_chart_domain(int rings) {
  ConformalChart chart;
  std::vector<int> ring_start(rings + 1);
  int total = 0;
  for (int k = 0; k <= rings; ++k) {
    ring_start[k] = total;
    total += ring_count(k);
  }
  chart.nodes.resize(total);
  chart.is_boundary.assign(total, false);
  chart.is_inner.assign(total, false);
  for (int k = 0; k <= rings; ++k) {
    const int n = ring_count(k);
    for (int j = 0; j < n; ++j)
      chart.nodes[ring_start[k] + j] = std::polar(static_cast<double>(k) / rings,
                                                  2.0 * M_PI * j / n);
  }
  for (int j = 0; j < ring_count(1); ++j)
    chart.tris.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % ring_count(1)});
  for (int k = 1; k < rings; ++k)
    stitch(chart.tris, ring_start[k], ring_count(k), ring_start[k + 1], ring_count(k + 1));

  for (int j = 0; j < ring_count(rings); ++j) {
    chart.boundary_nodes.push_back(ring_start[rings] + j);
    chart.is_boundary[ring_start[rings] + j] = true;
  }
  for (int k = 0; k + 2 <= rings; ++k)
    for (int j = 0; j < ring_count(k); ++j) chart.is_inner[ring_start[k] + j] = true;

  chart.sigma.assign(total, Vec3());
  chart.f.assign(total, 0.0);
  chart.r0 = 1.0;
  return chart;
}

void chart_finalize(ConformalChart& chart) {
  const GradientFit fit = build_gradient_fit(chart);
  fit.apply(chart, &chart.sigma_x, &chart.sigma_y);
  const int n = chart.node_count();
  chart.f.assign(n, 0.0);
  double defect = 0.0;
  for (int v = 0; v < n; ++v) {
    const double g = 2.0 / (1.0 - chart.sigma[v].norm2());
    const double e2f = 0.5 * g * g * (chart.sigma_x[v].norm2() + chart.sigma_y[v].norm2());
    chart.f[v] = 0.5 * std::log(std::max(e2f, 1e-300));
    if (chart.is_inner[v]) {
      const double cross = g * g * chart.sigma_x[v].dot(chart.sigma_y[v]);
      const double aniso = 0.5 * g * g *
                           (chart.sigma_x[v].norm2() - chart.sigma_y[v].norm2());
      defect = std::max(defect, (std::abs(cross) + std::abs(aniso)) / std::max(e2f, 1e-300));
    }
  }
  chart.conformality_defect = defect;
}

void chart_fill(ConformalChart& chart, const std::function<Vec3(cplx)>& sigma_of_z) {
  for (int v = 0; v < chart.node_count(); ++v) chart.sigma[v] = sigma_of_z(chart.nodes[v]);
  chart_finalize(chart);
}

ConformalChart resample_chart(const TriMesh& mesh, const Quasicircle& gamma,
                              const SolverConfig& solver_config, const ChartOptions& opts) {
  ConformalChart chart = build_chart_domain(opts.rings);

  if (mesh.rings > 0 && mesh.boundary_samples > 0) {
    // warm start: resample the mesh through its (ring, angle) labels with
    // angular interpolation per ring (ring counts vary)
    std::vector<std::vector<Vec3>> rows(mesh.rings + 1);
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      const auto [ring, angle] = mesh.param[v];
      if (ring < 0) continue;
      auto& row = rows[ring];
      if (static_cast<int>(row.size()) <= angle) row.resize(angle + 1);
      row[angle] = to_poincare_ball(mesh.vertices[v]);
    }
    auto ring_at = [&](int k, double phi) {
      const auto& row = rows[k];
      const int n = static_cast<int>(row.size());
      if (n <= 1) return row.empty() ? Vec3() : row[0];
      double a = phi / (2.0 * M_PI) * n;
      a -= std::floor(a / n) * n;
      const int j0 = static_cast<int>(a) % n;
      const double t = a - static_cast<int>(a);
      return row[j0] * (1 - t) + row[(j0 + 1) % n] * t;
    };
    auto resample = [&](cplx z) {
      const double rho = std::min(std::abs(z), 1.0);
      double phi = std::arg(z);
      if (phi < 0) phi += 2.0 * M_PI;
      const double fs = rho * mesh.rings;
      const int k0 = std::min(static_cast<int>(fs), mesh.rings - 1);
      const double ts = fs - k0;
      return ring_at(k0, phi) * (1 - ts) + ring_at(k0 + 1, phi) * ts;
    };
    for (int v = 0; v < chart.node_count(); ++v) chart.sigma[v] = resample(chart.nodes[v]);
  } else {
    // no structured labels (imported mesh): Poisson-kernel harmonic warm start
    // from the truncation curve; the relaxation is a solver in its own right.
    const int m = 256;
    std::vector<Vec3> bpts(m);
    for (int j = 0; j < m; ++j)
      bpts[j] = boundary_curve(gamma.source, solver_config.eps, 2.0 * M_PI * j / m);
    for (int v = 0; v < chart.node_count(); ++v) {
      const double rho = std::min(std::abs(chart.nodes[v]), 0.999);
      const double theta = std::arg(chart.nodes[v]);
      Vec3 pos{0, 0, 0};
      double wsum = 0.0;
      for (int j = 0; j < m; ++j) {
        const double phi_j = 2.0 * M_PI * j / m;
        const double w =
            (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(theta - phi_j) + rho * rho);
        pos = pos + w * bpts[j];
        wsum += w;
      }
      chart.sigma[v] = pos * (1.0 / wsum);
    }
  }

  // boundary nodes carry curve parameters; three pins fix the Moebius gauge
  const int nb = static_cast<int>(chart.boundary_nodes.size());
  std::vector<double> phi(nb);
  std::vector<bool> pinned(nb, false);
  for (int j = 0; j < nb; ++j) {
    phi[j] = 2.0 * M_PI * j / nb;
    chart.sigma[chart.boundary_nodes[j]] =
        boundary_curve(gamma.source, solver_config.eps, phi[j]);
  }
  pinned[0] = pinned[nb / 3] = pinned[2 * nb / 3] = true;

  const FlatOperator op = build_flat_operator(chart);
  const GradientFit fit = build_gradient_fit(chart);

  std::vector<Vec3> gx, gy, disp(chart.node_count());
  double omega = opts.step, omega_b = opts.slide_step;
  for (int it = 0; it < opts.max_iterations; ++it) {
    fit.apply(chart, &gx, &gy);
    double max_disp = 0.0;
    for (int v = 0; v < chart.node_count(); ++v) {
      Vec3 avg{0, 0, 0};
      for (const auto& [u, wgt] : op.w[v]) avg = avg + wgt * chart.sigma[u];
      avg = avg * (1.0 / std::max(op.wsum[v], 1e-16));
      const Vec3 gam = christoffel_term(chart.sigma[v], gx[v], gy[v]);
      disp[v] = (avg - chart.sigma[v]) + (op.area[v] / std::max(op.wsum[v], 1e-16)) * gam;
    }
    for (int v = 0; v < chart.node_count(); ++v) {
      if (chart.is_boundary[v]) continue;
      chart.sigma[v] = chart.sigma[v] + omega * disp[v];
      max_disp = std::max(max_disp, omega * disp[v].norm());
    }
    for (int j = 0; j < nb; ++j) {
      if (pinned[j]) continue;
      const int v = chart.boundary_nodes[j];
      const Vec3 tangent = boundary_curve_deriv(gamma.source, solver_config.eps, phi[j]);
      const double t2 = std::max(tangent.norm2(), 1e-16);
      const double dphi = omega_b * disp[v].dot(tangent) / t2;
      phi[j] += dphi;
      chart.sigma[v] = boundary_curve(gamma.source, solver_config.eps, phi[j]);
      max_disp = std::max(max_disp, std::abs(dphi) * std::sqrt(t2));
    }
    chart.tension_residual = max_disp;
    if (max_disp < opts.displacement_tol) {
      chart.converged = true;
      break;
    }
  }

  chart_finalize(chart);
  if (chart.conformality_defect > opts.conformality_tol)
    throw chart_error("resample_chart: conformality defect " +
                      std::to_string(chart.conformality_defect) + " above tolerance");

  // Gauge calibration of the presented radius: least squares of the log factor
  // against the complete hyperbolic normalization over the inner half.
  double best_kappa = 1.0, best_obj = std::numeric_limits<double>::infinity();
  auto objective = [&](double kappa) {
    double obj = 0.0;
    int count = 0;
    for (int v = 0; v < chart.node_count(); ++v) {
      if (!chart.is_inner[v] || std::abs(chart.nodes[v]) > 0.6) continue;
      const double z2 = std::norm(kappa * chart.nodes[v]);
      if (z2 >= 1.0) return std::numeric_limits<double>::infinity();
      const double dev = 2.0 * chart.f[v] - 2.0 * std::log(kappa) - std::log(4.0) +
                         2.0 * std::log(1.0 - z2);
      obj += dev * dev;
      ++count;
    }
    return count ? obj / count : std::numeric_limits<double>::infinity();
  };
  double lo = 0.05, hi = 0.999;
  for (int k = 0; k < 200; ++k) {
    const double m1 = lo + 0.382 * (hi - lo), m2 = lo + 0.618 * (hi - lo);
    if (objective(m1) < objective(m2))
      hi = m2;
    else
      lo = m1;
  }
  best_kappa = 0.5 * (lo + hi);
  best_obj = objective(best_kappa);
  (void)best_obj;

  for (cplx& z : chart.nodes) z *= best_kappa;
  for (int v = 0; v < chart.node_count(); ++v) {
    chart.f[v] -= std::log(best_kappa);
    chart.sigma_x[v] = chart.sigma_x[v] * (1.0 / best_kappa);
    chart.sigma_y[v] = chart.sigma_y[v] * (1.0 / best_kappa);
  }
  chart.r0 = best_kappa;
  return chart;
}

double harmonic_residual(const ConformalChart& chart) {
  // independent stencil: quadratic fit over two-rings in parameter coords
  const int n = chart.node_count();
  std::vector<std::set<int>> nbr(n);
  for (const auto& t : chart.tris)
    for (int e = 0; e < 3; ++e) {
      nbr[t[e]].insert(t[(e + 1) % 3]);
      nbr[t[(e + 1) % 3]].insert(t[e]);
    }

  double worst = 0.0;
  for (int v = 0; v < n; ++v) {
    if (!chart.is_inner[v]) continue;
    std::set<int> stencil;
    for (int u : nbr[v]) {
      stencil.insert(u);
      for (int w : nbr[u]) stencil.insert(w);
    }
    stencil.erase(v);
    const int m = static_cast<int>(stencil.size());
    if (m < 9) continue;
    Eigen::MatrixXd A(m + 1, 6);
    Eigen::MatrixXd rhs(m + 1, 3);
    A(0, 0) = 1.0;
    for (int c = 1; c < 6; ++c) A(0, c) = 0.0;
    rhs(0, 0) = chart.sigma[v].x;
    rhs(0, 1) = chart.sigma[v].y;
    rhs(0, 2) = chart.sigma[v].z;
    int row = 1;
    for (int u : stencil) {
      const cplx d = chart.nodes[u] - chart.nodes[v];
      A(row, 0) = 1.0;
      A(row, 1) = d.real();
      A(row, 2) = d.imag();
      A(row, 3) = 0.5 * d.real() * d.real();
      A(row, 4) = d.real() * d.imag();
      A(row, 5) = 0.5 * d.imag() * d.imag();
      rhs(row, 0) = chart.sigma[u].x;
      rhs(row, 1) = chart.sigma[u].y;
      rhs(row, 2) = chart.sigma[u].z;
      ++row;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 6) continue;
    const Eigen::MatrixXd coef = qr.solve(rhs);  // 6 x 3
    const Vec3 sx(coef(1, 0), coef(1, 1), coef(1, 2));
    const Vec3 sy(coef(2, 0), coef(2, 1), coef(2, 2));
    const Vec3 lap(coef(3, 0) + coef(5, 0), coef(3, 1) + coef(5, 1), coef(3, 2) + coef(5, 2));
    const Vec3 gam = christoffel_term(chart.sigma[v], sx, sy);
    const double g = 2.0 / (1.0 - chart.sigma[v].norm2());
    const double scale = std::max(g * g * (sx.norm2() + sy.norm2()), 1e-300);
    const Vec3 defect = lap + gam;
    worst = std::max(worst,
                     std::max({std::abs(defect.x), std::abs(defect.y), std::abs(defect.z)}) /
                         scale);
  }
  return worst;
}

FactorBounds conformal_factor_bounds(const ConformalChart& chart, double sup_lambda) {
  const double delta2 = 1.0 + sup_lambda * sup_lambda;
  FactorBounds out;
  out.upper_slack = std::numeric_limits<double>::infinity();
  out.lower_slack = std::numeric_limits<double>::infinity();
  for (int v = 0; v < chart.node_count(); ++v) {
    if (!chart.is_inner[v]) continue;
    const double z2 = std::norm(chart.nodes[v]);
    if (z2 >= 1.0) continue;
    const double reference = 4.0 / ((1.0 - z2) * (1.0 - z2));
    const double e2f = std::exp(2.0 * chart.f[v]);
    out.upper_slack = std::min(out.upper_slack, reference - e2f);
    out.lower_slack = std::min(out.lower_slack, e2f - reference / delta2);
  }
  return out;
}

}  // namespace qd
