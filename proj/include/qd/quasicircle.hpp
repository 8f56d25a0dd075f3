#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "qd/bers.hpp"
#include "qd/geom.hpp"
#include "qd/laurent.hpp"

namespace qd {

// Sampled curve Psi(S^1) at infinity, with the quantities derived from its
// source map. `k_upper` is the Ahlfors-Weill dilatation bound, present only
// while the Bers norm is below 1/2, and is an upper bound for the infimal
// dilatation of the quasicircle (a non-conformal extension may have maximal
// dilatation K' anywhere in [K, 2K]).
struct Quasicircle {
  std::vector<cplx> samples;      // Psi(e^{i theta_j}), theta_j = 2 pi j / n
  LaurentMap source;
  double bers = 0.0;
  std::optional<double> k_upper;

  std::vector<MinkVec4> null_rays() const;  // future null ray per sample
  void write_csv(std::ostream& os) const;   // columns: theta, re, im
};

// n equally spaced boundary samples of a certified map (the map is certified
// here when it arrives without a certificate). Simplicity of the sampled
// polygon is verified; failure raises univalence_error.
Quasicircle sample_quasicircle(const LaurentMap& psi, int n);

}  // namespace qd
