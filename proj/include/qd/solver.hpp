#pragma once

#include <vector>

#include "qd/quasicircle.hpp"
#include "qd/trimesh.hpp"

namespace qd {

struct SolverConfig {
  double eps = 0.02;        // Euclidean gap to the ideal sphere, in (1e-4, 0.2)
  double tol = 2e-6;        // convergence: max |area gradient| / vertex area
  int max_iterations = 30000;
  double step = 0.5;        // relative step against the diagonal preconditioner
  double momentum = 0.95;   // heavy-ball factor, reset on rejected steps
  int flip_every = 50;      // intrinsic Delaunay pass cadence
  double min_angle_deg = 1.0;
  int levels = 3;           // multiscale levels, factor 2 per level
  int target_vertices = 10000;
  unsigned long long rng_seed = 1;  // reserved for stochastic subroutines
  double near_boundary_margin = 1.2;

  // structured sizes at the finest level (rings x boundary samples + center)
  int finest_rings() const;
  int finest_boundary_samples() const;
};

// Structured polar disc mesh: boundary loop on the Euclidean sphere of radius
// 1 - eps along the radial projection of gamma, interior filled by a discrete
// Poisson-kernel harmonic extension in the ball chart.
TriMesh seed_mesh(const Quasicircle& gamma, const SolverConfig& config);
TriMesh seed_mesh_sized(const Quasicircle& gamma, const SolverConfig& config, int rings,
                        int boundary_samples);

struct MinimizeStats {
  bool converged = false;
  int iterations = 0;
  double final_gradient = 0.0;
  double final_area = 0.0;
  bool area_monotone = true;
  int flips = 0;
};

// Gradient descent on the total geodesic-triangle area (angle defect) with the
// boundary pinned. Vertices stay on the hyperboloid; accepted steps never
// increase the area; intrinsic Delaunay flips keep the triangulation sane.
// A hit of the iteration cap returns the partial mesh with stats.converged
// false; collapse below the minimum angle throws degeneracy_error.
TriMesh minimize_area(TriMesh mesh, const SolverConfig& config, MinimizeStats* stats = nullptr);

// Area gradient at every vertex (zero rows for boundary vertices). Exposed for
// verification against finite differences.
std::vector<MinkVec4> area_gradient(const TriMesh& mesh);

// One multiscale solve: seed at the coarsest level, minimize, prolong, repeat.
struct LevelRecord {
  int rings = 0;
  int boundary_samples = 0;
  MinimizeStats stats;
  TriMesh mesh;
};
std::vector<LevelRecord> solve_multilevel(const Quasicircle& gamma, const SolverConfig& config);

}  // namespace qd
