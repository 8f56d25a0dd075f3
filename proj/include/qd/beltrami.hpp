#pragma once

#include <vector>

#include "qd/errors.hpp"
#include "qd/vec.hpp"

namespace qd {

// Uniform polar sampling of the unit disc: radii (i + 1/2)/n_r, angles 2pi j/n_theta.
struct DiscGrid {
  int n_r = 32;
  int n_theta = 64;

  int size() const { return n_r * n_theta; }
  cplx point(int i, int j) const;
  bool operator==(const DiscGrid& o) const { return n_r == o.n_r && n_theta == o.n_theta; }
};

// Beltrami coefficient samples mu(z) on a disc grid; sup |mu| < 1 strictly.
struct BeltramiField {
  DiscGrid grid;
  std::vector<cplx> mu;

  BeltramiField() = default;
  BeltramiField(DiscGrid g, std::vector<cplx> samples);  // checks sup |mu| < 1

  double sup_abs() const;
  static BeltramiField constant(DiscGrid g, cplx value);
};

// Pointwise dilatation of g o f^{-1} on f's grid:
//   mu = (df/|df| phase)^2 (mu_g - mu_f) / (1 - conj(mu_f) mu_g),
// where df_phase holds the unit phases of the z-derivative of f. Throws
// degeneracy_error when a denominator modulus drops below 1e-12.
BeltramiField compose_dilatation(const BeltramiField& mu_f, const BeltramiField& mu_g,
                                 const std::vector<cplx>& df_phase);

// Maximal dilatation K = (1 + k)/(1 - k) with k = sup |mu|.
double max_dilatation_K(const BeltramiField& mu);

}  // namespace qd
