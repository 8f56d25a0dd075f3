#include "qd/bers.hpp"

#include <algorithm>
#include <cmath>

namespace qd {

double poincare_density(cplx z, HypDomain domain) {
  const double r2 = std::norm(z);
  if (std::abs(r2 - 1.0) < 1e-14)
    throw domain_error("poincare_density: z on the unit circle, density diverges");
  if (domain == HypDomain::disc) {
    if (r2 > 1.0) throw domain_error("poincare_density: z outside the disc");
    return 2.0 / (1.0 - r2);
  }
  if (r2 < 1.0) throw domain_error("poincare_density: z inside the disc");
  return 2.0 / (r2 - 1.0);
}

QuadDiffSample sample_schwarzian(const LaurentMap& psi, int n_r, int n_theta) {
  QuadDiffSample q;
  q.domain = HypDomain::exterior_disc;
  q.n_r = n_r;
  q.n_theta = n_theta;
  q.h.resize(static_cast<std::size_t>(n_r) * n_theta);
  const double dr = (q.r_max - q.r_min) / (n_r - 1);
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_theta; ++j) {
      const cplx z = std::polar(q.r_min + i * dr, 2.0 * M_PI * j / n_theta);
      q.h[static_cast<std::size_t>(i) * n_theta + j] = schwarzian(psi, z);
    }

  // d/dzbar = (e^{i theta}/2)(d/dr + (i/r) d/dtheta), fourth-order stencils.
  const double dth = 2.0 * M_PI / n_theta;
  double worst = 0.0;
  auto H = [&](int i, int j) { return q.at(i, (j % n_theta + n_theta) % n_theta); };
  for (int i = 2; i < n_r - 2; ++i) {
    const double r = q.r_min + i * dr;
    for (int j = 0; j < n_theta; ++j) {
      const cplx hr = (-H(i + 2, j) + 8.0 * H(i + 1, j) - 8.0 * H(i - 1, j) + H(i - 2, j)) /
                      (12.0 * dr);
      const cplx ht = (-H(i, j + 2) + 8.0 * H(i, j + 1) - 8.0 * H(i, j - 1) + H(i, j - 2)) /
                      (12.0 * dth);
      const cplx phase = std::polar(1.0, 2.0 * M_PI * j / n_theta);
      const cplx dzbar = 0.5 * phase * (hr + cplx(0, 1) / r * ht);
      worst = std::max(worst, std::abs(dzbar));
    }
  }
  q.cr_residual = worst;
  if (worst > 1e-3)
    throw geometry_error("sample_schwarzian: samples are not holomorphic (CR residual " +
                         std::to_string(worst) + ")");
  return q;
}

namespace {

// sup over one graded grid level of the weighted Schwarzian.
double weighted_sup_level(const LaurentMap& psi, int level, int n_theta) {
  const double lg_inner = -(6.0 + 2.0 * level);  // r - 1 = 2^{lg_inner}
  const double lg_outer = 4.0 + level;
  // density doubles per level so the radial sup error drops by ~4x
  const int n_r = static_cast<int>((lg_outer - lg_inner) * (8 << level));
  double sup = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double lg = lg_inner + (lg_outer - lg_inner) * i / (n_r - 1.0);
    const double r = 1.0 + std::exp2(lg);
    const double w = (r * r - 1.0) / 2.0;  // 1/density
    for (int j = 0; j < n_theta; ++j) {
      const cplx z = std::polar(r, 2.0 * M_PI * j / n_theta);
      sup = std::max(sup, w * w * std::abs(schwarzian(psi, z)));
    }
  }
  return sup;
}

}  // namespace

BersEstimate bers_norm(const LaurentMap& psi, const BersGridSpec& spec) {
  psi.require_certificate();
  const double at_infinity = std::abs(psi.schwarzian_tail()) / 4.0;

  BersEstimate est;
  double prev = -1.0;
  for (int level = 0; level < spec.max_levels; ++level) {
    const double sup = std::max(weighted_sup_level(psi, level, spec.angular_samples), at_infinity);
    est.value = sup;
    est.levels_used = level + 1;
    if (prev >= 0.0) {
      est.refinement_gap = std::abs(sup - prev) / std::max(sup, 1e-12);
      if (est.refinement_gap <= spec.rel_tol) {
        est.converged = true;
        return est;
      }
    }
    prev = sup;
  }
  throw resolution_error("bers_norm: refinement did not converge (last gap " +
                             std::to_string(est.refinement_gap) + ")",
                         est.value);
}

double ahlfors_weill_K(double b) {
  if (b < 0) throw domain_error("ahlfors_weill_K: negative norm");
  if (b >= 0.5)
    throw domain_error("ahlfors_weill_K: norm >= 1/2, no extension bound from this formula");
  return (1.0 + 2.0 * b) / (1.0 - 2.0 * b);
}

double teich_distance_from_K(double K) {
  if (K < 1.0) throw domain_error("teich_distance_from_K: K must be >= 1");
  return 0.5 * std::log(K);
}

}  // namespace qd
