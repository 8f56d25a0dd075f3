#pragma once

#include <vector>

#include "qd/quasicircle.hpp"
#include "qd/trimesh.hpp"

namespace qd {

// Cotangent-weight Laplace-Beltrami operator on the induced hyperbolic metric
// with mixed Voronoi vertex areas. apply() returns the pointwise Laplacian
// (trace-of-Hessian sign: positive on convex bumps of the argument).
struct CotanOperator {
  std::vector<std::vector<std::pair<int, double>>> weights;  // per vertex: (neighbor, w)
  std::vector<double> area;

  std::vector<double> apply(const std::vector<double>& u) const;
};
CotanOperator build_cotan_operator(const TriMesh& mesh);

// max over trusted interior vertices of |Lap u - 2u| / (1 + |u|) for
// u = signed sinh distance to P.
double pde_residual(const TriMesh& mesh, const SupportPlane& P);

// Support planes through pairs of ideal boundary samples, rotated within the
// pencil through the pair until the whole curve sits on the nonnegative side.
struct ConvexHullProxy {
  std::vector<SupportPlane> planes;
  std::vector<std::pair<int, int>> sample_pairs;
};
ConvexHullProxy build_hull_proxy(const Quasicircle& gamma, int n_planes);

// Most negative signed sinh distance from any mesh vertex to any proxy plane;
// 0 when the mesh is contained. Throws resolution_error when too few support
// planes can be built from the samples.
double hull_containment(const TriMesh& mesh, const Quasicircle& gamma, int n_planes);

// Ratio of the discrete C^2 norm of u on the ball of radius R/2 to the C^0
// norm on the ball of radius R, in the log-map chart at `vertex`. Purely a
// measured diagnostic; u identically zero returns 0 by convention. Throws
// domain_error when the ball reaches the mesh boundary.
double schauder_ratio(const TriMesh& mesh, int vertex, const SupportPlane& P, double R);

}  // namespace qd
