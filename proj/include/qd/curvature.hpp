#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qd/trimesh.hpp"

namespace qd {

struct CurvatureReport {
  std::vector<double> lambda;        // per-vertex |principal curvature|, 0 when skipped
  std::vector<double> trace_abs;     // |tr B| branch/minimality diagnostic
  std::vector<std::uint8_t> flags;   // mesh flags plus kFlagDegenerateRing marks
  double sup_lambda = 0.0;           // over reported vertices
  double max_trace_abs = 0.0;
  int reported = 0;
  int skipped = 0;
  int rings = 0;
  int vertices = 0;

  void write_csv(std::ostream& os) const;  // vertexId, lambda, flag
};

struct CurvatureOptions {
  int probes = 3;      // probe planes averaged per vertex
  double tilt = 0.5;   // probe dual = (N + tilt * t)/norm, t a tangent direction
};

// Shape operator from the sinh-distance identity: with u the signed sinh
// distance to a probe plane P through the vertex,
//   Hess u - u E = <grad U, N> B,
// where <grad U, N> = <p, N> is evaluated directly from the ambient formula
// (grad U = p + <p,x> x), so no square-root branch is involved. u is fitted
// cubically over the two-ring in a tangent frame; three tilted probes are
// averaged. Reports |eigenvalues| of the recovered B.
CurvatureReport principal_curvatures(const TriMesh& mesh, const CurvatureOptions& opts = {});

// Independent check: second fundamental form from a cubic fit of the normal
// height <y, N(x)> over the same tangent coordinates.
CurvatureReport curvature_quadratic_fit(const TriMesh& mesh);

}  // namespace qd
