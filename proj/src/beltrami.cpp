#include "qd/beltrami.hpp"

#include <algorithm>
#include <cmath>

namespace qd {

cplx DiscGrid::point(int i, int j) const {
  return std::polar((i + 0.5) / n_r, 2.0 * M_PI * j / n_theta);
}

BeltramiField::BeltramiField(DiscGrid g, std::vector<cplx> samples)
    : grid(g), mu(std::move(samples)) {
  if (static_cast<int>(mu.size()) != grid.size())
    throw domain_error("BeltramiField: sample count does not match the grid");
  const double k = sup_abs();
  if (!(k < 1.0)) throw domain_error("BeltramiField: sup |mu| must be < 1");
}

double BeltramiField::sup_abs() const {
  double k = 0.0;
  for (const cplx& m : mu) k = std::max(k, std::abs(m));
  return k;
}

BeltramiField BeltramiField::constant(DiscGrid g, cplx value) {
  return BeltramiField(g, std::vector<cplx>(g.size(), value));
}

BeltramiField compose_dilatation(const BeltramiField& mu_f, const BeltramiField& mu_g,
                                 const std::vector<cplx>& df_phase) {
  if (!(mu_f.grid == mu_g.grid))
    throw domain_error("compose_dilatation: fields live on different grids");
  if (df_phase.size() != mu_f.mu.size())
    throw domain_error("compose_dilatation: phase grid size mismatch");

  std::vector<cplx> out(mu_f.mu.size());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const cplx den = 1.0 - std::conj(mu_f.mu[idx]) * mu_g.mu[idx];
    if (std::abs(den) < 1e-12)
      throw degeneracy_error("compose_dilatation: degenerate composition at a sample");
    const cplx ph = df_phase[idx];
    out[idx] = ph * ph * (mu_g.mu[idx] - mu_f.mu[idx]) / den;
  }
  return BeltramiField(mu_f.grid, std::move(out));
}

double max_dilatation_K(const BeltramiField& mu) {
  const double k = mu.sup_abs();
  return (1.0 + k) / (1.0 - k);
}

}  // namespace qd
