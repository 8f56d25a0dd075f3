#include "qd/trimesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace qd {

namespace {
std::pair<int, int> ekey(int a, int b) { return {std::min(a, b), std::max(a, b)}; }
}  // namespace

int TriMesh::euler_characteristic() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) edges.insert(ekey(f[e], f[(e + 1) % 3]));
  return vertex_count() - static_cast<int>(edges.size()) + face_count();
}

int TriMesh::boundary_loop_count() const {
  // boundary edges = edges with exactly one incident face
  std::map<std::pair<int, int>, int> count;
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) count[ekey(f[e], f[(e + 1) % 3])]++;
  std::map<int, std::vector<int>> next;
  for (const auto& [edge, c] : count)
    if (c == 1) {
      next[edge.first].push_back(edge.second);
      next[edge.second].push_back(edge.first);
    }
  std::set<int> seen;
  int loops = 0;
  for (const auto& [v, nbrs] : next) {
    if (seen.count(v)) continue;
    ++loops;
    std::queue<int> q;
    q.push(v);
    seen.insert(v);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : next[u])
        if (!seen.count(w)) {
          seen.insert(w);
          q.push(w);
        }
    }
  }
  return loops;
}

bool TriMesh::is_disc() const { return euler_characteristic() == 1 && boundary_loop_count() == 1; }

double TriMesh::edge_cosh(int u, int v) const {
  return std::max(1.0, -mink_inner(vertices[u].v, vertices[v].v));
}

double TriMesh::edge_length(int u, int v) const { return std::acosh(edge_cosh(u, v)); }

std::array<double, 3> TriMesh::face_angles(int f) const {
  const auto& t = faces[f];
  const double ca = edge_cosh(t[1], t[2]);  // opposite vertex 0
  const double cb = edge_cosh(t[0], t[2]);
  const double cc = edge_cosh(t[0], t[1]);
  const double sa = std::sqrt(ca * ca - 1.0), sb = std::sqrt(cb * cb - 1.0),
               sc = std::sqrt(cc * cc - 1.0);
  auto angle = [](double copp, double c1, double s1, double c2, double s2) {
    const double denom = std::max(s1 * s2, 1e-300);
    return std::acos(std::clamp((c1 * c2 - copp) / denom, -1.0, 1.0));
  };
  return {angle(ca, cb, sb, cc, sc), angle(cb, ca, sa, cc, sc), angle(cc, ca, sa, cb, sb)};
}

double TriMesh::face_area(int f) const {
  const auto ang = face_angles(f);
  return std::max(0.0, M_PI - ang[0] - ang[1] - ang[2]);
}

double TriMesh::total_area() const {
  double area = 0.0;
  for (int f = 0; f < face_count(); ++f) area += face_area(f);
  return area;
}

double TriMesh::min_face_angle() const {
  double worst = M_PI;
  for (int f = 0; f < face_count(); ++f) {
    const auto ang = face_angles(f);
    worst = std::min({worst, ang[0], ang[1], ang[2]});
  }
  return worst;
}

std::vector<double> TriMesh::vertex_areas_barycentric() const {
  std::vector<double> area(vertex_count(), 0.0);
  for (int f = 0; f < face_count(); ++f) {
    const double third = face_area(f) / 3.0;
    for (int v : faces[f]) area[v] += third;
  }
  return area;
}

void TriMesh::compute_normals() {
  normals.assign(vertex_count(), MinkVec4());
  for (const auto& f : faces) {
    const MinkVec4& p0 = vertices[f[0]].v;
    const MinkVec4 e1 = vertices[f[1]].v - p0;
    const MinkVec4 e2 = vertices[f[2]].v - p0;
    MinkVec4 n = mink_cross(p0, e1, e2);
    const double q = mink_inner(n, n);
    if (q <= 0) continue;  // degenerate face
    n = n * (1.0 / std::sqrt(q));
    for (int v : f) normals[v] += n;
  }
  for (int v = 0; v < vertex_count(); ++v) {
    // project onto the tangent space at v, then normalize
    MinkVec4 n = normals[v];
    n = n + vertices[v].v * mink_inner(n, vertices[v].v);
    const double q = mink_inner(n, n);
    if (q > 1e-20)
      normals[v] = n * (1.0 / std::sqrt(q));
    else
      normals[v] = MinkVec4(0, 0, 1, 0);
  }
}

std::vector<std::vector<int>> TriMesh::vertex_neighbors() const {
  std::vector<std::set<int>> nbr(vertex_count());
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) {
      nbr[f[e]].insert(f[(e + 1) % 3]);
      nbr[f[(e + 1) % 3]].insert(f[e]);
    }
  std::vector<std::vector<int>> out(vertex_count());
  for (int v = 0; v < vertex_count(); ++v) out[v] = {nbr[v].begin(), nbr[v].end()};
  return out;
}

std::map<std::pair<int, int>, std::array<int, 2>> TriMesh::edge_faces() const {
  std::map<std::pair<int, int>, std::array<int, 2>> out;
  for (int f = 0; f < face_count(); ++f)
    for (int e = 0; e < 3; ++e) {
      auto key = ekey(faces[f][e], faces[f][(e + 1) % 3]);
      auto it = out.find(key);
      if (it == out.end())
        out[key] = {f, -1};
      else
        it->second[1] = f;
    }
  return out;
}

void TriMesh::flag_near_boundary(double margin) {
  // Dijkstra from all boundary vertices along edge lengths.
  std::vector<double> dist(vertex_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int v : boundary) {
    dist[v] = 0.0;
    heap.push({0.0, v});
  }
  const auto nbrs = vertex_neighbors();
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v] + 1e-15 || d > margin) continue;
    for (int w : nbrs[v]) {
      const double nd = d + edge_length(v, w);
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.push({nd, w});
      }
    }
  }
  for (int v = 0; v < vertex_count(); ++v)
    if (!(flags[v] & kFlagBoundary) && dist[v] <= margin) flags[v] |= kFlagNearBoundary;
}

void write_off(const TriMesh& mesh, std::ostream& os) {
  os << "OFF\n# model: klein\n";
  os << mesh.vertex_count() << " " << mesh.face_count() << " 0\n";
  char line[128];
  for (const HPoint& p : mesh.vertices) {
    const Vec3 k = to_klein(p);
    std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", k.x, k.y, k.z);
    os << line;
  }
  for (const auto& f : mesh.faces) os << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
}

TriMesh read_off(std::istream& is) {
  std::string tok;
  if (!(is >> tok) || tok != "OFF") throw io_error("read_off: missing OFF header");
  auto next_token = [&](auto& value) {
    while (is >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(is, rest);
        continue;
      }
      std::istringstream ss(tok);
      if (!(ss >> value)) throw io_error("read_off: bad token '" + tok + "'");
      return;
    }
    throw io_error("read_off: unexpected end of file");
  };

  int nv = 0, nf = 0, ne = 0;
  next_token(nv);
  next_token(nf);
  next_token(ne);
  TriMesh mesh;
  mesh.vertices.reserve(nv);
  for (int i = 0; i < nv; ++i) {
    double x, y, z;
    next_token(x);
    next_token(y);
    next_token(z);
    mesh.vertices.push_back(from_klein({x, y, z}));
  }
  for (int i = 0; i < nf; ++i) {
    int deg, a, b, c;
    next_token(deg);
    if (deg != 3) throw io_error("read_off: only triangle faces are supported");
    next_token(a);
    next_token(b);
    next_token(c);
    mesh.faces.push_back({a, b, c});
  }

  // reconstruct the boundary loop from edges with a single incident face
  auto ef = mesh.edge_faces();
  std::map<int, std::vector<int>> ring;
  for (const auto& [edge, fs] : ef)
    if (fs[1] < 0) {
      ring[edge.first].push_back(edge.second);
      ring[edge.second].push_back(edge.first);
    }
  mesh.flags.assign(nv, kFlagNone);
  mesh.param.assign(nv, {-1, -1});
  if (!ring.empty()) {
    int start = ring.begin()->first;
    int prev = -1, cur = start;
    do {
      mesh.boundary.push_back(cur);
      mesh.flags[cur] |= kFlagBoundary;
      const auto& nbrs = ring[cur];
      if (nbrs.size() != 2) throw io_error("read_off: boundary is not a single loop");
      int nxt = (nbrs[0] == prev) ? nbrs[1] : nbrs[0];
      prev = cur;
      cur = nxt;
    } while (cur != start);
    mesh.boundary_samples = static_cast<int>(mesh.boundary.size());
  }
  mesh.compute_normals();
  return mesh;
}

}  // namespace qd
