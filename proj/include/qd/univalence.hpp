#pragma once

#include <string>
#include <vector>

#include "qd/laurent.hpp"

namespace qd {

struct UnivalenceOutcome {
  bool ok = false;
  UnivalenceCertificate certificate;
  std::string reason;           // set on failure
  cplx witness_a{0, 0};         // pair of grid parameters exhibiting the failure
  cplx witness_b{0, 0};
};

// Injectivity test for Psi on a boundary-concentrated grid of D*.
// Rings at radii 1 + 2^{-j} (including a few radii far from the circle) with
// `resolution` angular samples. Per ring the image polygon must be simple and
// wind once positively around samples of the next ring inward; Psi' must not
// vanish on the grid. Failure is a return value, never an exception.
UnivalenceOutcome univalence_grid_check(const LaurentMap& psi, int resolution);

// Winding number of a closed polygon around a point (sum of turned angles / 2pi).
int winding_number(const std::vector<cplx>& polygon, cplx point);

// True when the closed polygon has a self-intersection (collinear overlaps
// count); pairs sharing an endpoint are skipped. On hit, reports the indices.
bool polygon_self_intersects(const std::vector<cplx>& polygon, int* seg_a = nullptr,
                             int* seg_b = nullptr);

}  // namespace qd
