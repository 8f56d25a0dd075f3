#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "qd/geom.hpp"

namespace qd {

// Vertex flags used when reporting per-vertex quantities.
enum VertexFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagBoundary = 1,       // on the pinned truncation loop
  kFlagNearBoundary = 2,   // within the boundary layer, excluded from sups
  kFlagDegenerateRing = 4  // local fit was skipped
};

// Triangulated disc with vertices on the hyperboloid. The boundary loop is
// pinned to the truncation sphere (Euclidean radius 1 - eps in the Poincare
// ball). `param` keeps the (ring, angle) labels of the structured seed so
// later stages can resample across edge flips.
struct TriMesh {
  std::vector<HPoint> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> boundary;          // ordered loop of vertex ids
  std::vector<MinkVec4> normals;      // per-vertex unit spacelike normal
  std::vector<std::uint8_t> flags;
  std::vector<std::array<int, 2>> param;  // (ring, angle index), -1 when unknown
  int rings = 0;
  int boundary_samples = 0;
  double eps = 0.0;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  int euler_characteristic() const;
  int boundary_loop_count() const;
  bool is_disc() const;  // chi == 1 with a single boundary loop

  bool is_boundary_vertex(int v) const { return flags[v] & kFlagBoundary; }
  bool is_reported_vertex(int v) const {
    return !(flags[v] & (kFlagBoundary | kFlagNearBoundary | kFlagDegenerateRing));
  }

  // cosh of the edge length, clamped to [1, inf)
  double edge_cosh(int u, int v) const;
  double edge_length(int u, int v) const;

  // Geodesic-triangle quantities from the hyperbolic law of cosines.
  double face_area(int f) const;            // angle defect pi - (sum of angles)
  std::array<double, 3> face_angles(int f) const;
  double total_area() const;
  double min_face_angle() const;

  std::vector<double> vertex_areas_barycentric() const;

  // per-vertex unit normals from Minkowski face cross products, area weighted
  void compute_normals();

  // adjacency: vertex -> one-ring neighbor ids (sorted, unique)
  std::vector<std::vector<int>> vertex_neighbors() const;
  // undirected edge -> the one or two incident faces
  std::map<std::pair<int, int>, std::array<int, 2>> edge_faces() const;

  // Marks kFlagNearBoundary on every vertex within hyperbolic distance
  // `margin` of the boundary loop (graph distance along edges).
  void flag_near_boundary(double margin);
};

// OFF with vertices in Klein coordinates; the header comment records the model.
void write_off(const TriMesh& mesh, std::ostream& os);
TriMesh read_off(std::istream& is);  // reconstructs boundary loop and normals

}  // namespace qd
