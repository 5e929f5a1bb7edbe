#include "qslab/sphere_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "qslab/numerics.hpp"

namespace qslab::geom {

namespace {

// Solid angle of the spherical triangle (a, b, c) on the unit sphere.
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  double num = std::abs(a.dot(b.cross(c)));
  double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

// Barycentric weights of the central projection of p onto triangle (a,b,c).
// Rays hitting the far side of the sphere solve with a negative sum; those
// come back with all coefficients pushed to -inf-like values so that
// max-min-coefficient selection rejects them.
Vec3 projective_bary(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  Eigen::Matrix3d m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  Vec3 lambda = m.fullPivLu().solve(p);
  double s = lambda.sum();
  if (s <= 1e-300) return Vec3(-1e300, -1e300, -1e300);
  return lambda / s;
}

}  // namespace

double cap_angular_radius(double area) {
  if (area <= 0.0 || area >= 1.0)
    throw std::invalid_argument("cap_angular_radius: area must be in (0, 1)");
  return std::acos(1.0 - 2.0 * area);
}

SphereMesh build_icosphere(int level) {
  if (level < 0) throw std::invalid_argument("icosphere: level must be >= 0");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

  SphereMesh mesh;
  mesh.level = level;
  mesh.levels_.push_back({verts, faces});

  for (int lv = 0; lv < level; ++lv) {
    const auto& cur = mesh.levels_.back();
    SphereMesh::LevelData next;
    next.vertices = cur.vertices;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int i, int j) {
      auto key = std::minmax(i, j);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 m = (next.vertices[i] + next.vertices[j]).normalized();
      int idx = static_cast<int>(next.vertices.size());
      next.vertices.push_back(m);
      midpoint.emplace(key, idx);
      return idx;
    };
    next.triangles.reserve(cur.triangles.size() * 4);
    for (const auto& tri : cur.triangles) {
      int ab = mid(tri[0], tri[1]);
      int bc = mid(tri[1], tri[2]);
      int ca = mid(tri[2], tri[0]);
      // Child order matters for locate(): corner a, b, c, then center.
      next.triangles.push_back({tri[0], ab, ca});
      next.triangles.push_back({tri[1], bc, ab});
      next.triangles.push_back({tri[2], ca, bc});
      next.triangles.push_back({ab, bc, ca});
    }
    mesh.levels_.push_back(std::move(next));
  }

  const auto& fine = mesh.levels_.back();
  int n = static_cast<int>(fine.vertices.size());

  // Final numbering: descending z, then longitude, then construction index.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const Vec3 &a = fine.vertices[i], &b = fine.vertices[j];
    if (a.z() != b.z()) return a.z() > b.z();
    double la = std::atan2(a.y(), a.x()), lb = std::atan2(b.y(), b.x());
    if (la != lb) return la < lb;
    return i < j;
  });
  mesh.construction_to_final_.assign(n, -1);
  for (int rank = 0; rank < n; ++rank) mesh.construction_to_final_[order[rank]] = rank;

  mesh.vertices.resize(n);
  for (int i = 0; i < n; ++i) mesh.vertices[mesh.construction_to_final_[i]] = fine.vertices[i];
  mesh.triangles.reserve(fine.triangles.size());
  for (const auto& tri : fine.triangles)
    mesh.triangles.push_back({mesh.construction_to_final_[tri[0]],
                              mesh.construction_to_final_[tri[1]],
                              mesh.construction_to_final_[tri[2]]});
  mesh.finalize();
  return mesh;
}

SphereMesh SphereMesh::icosphere(int level) { return build_icosphere(level); }

void SphereMesh::finalize() {
  int n = vertex_count();
  for (auto& tri : triangles) {
    const Vec3 &a = vertices[tri[0]], &b = vertices[tri[1]], &c = vertices[tri[2]];
    if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(tri[1], tri[2]);
  }

  vertex_weights.assign(n, 0.0);
  for (const auto& tri : triangles) {
    double area = spherical_triangle_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    if (!(area > 0.0)) throw std::runtime_error("mesh has a degenerate triangle");
    for (int k = 0; k < 3; ++k) vertex_weights[tri[k]] += area / 3.0;
  }
  double total = std::accumulate(vertex_weights.begin(), vertex_weights.end(), 0.0);
  for (double& w : vertex_weights) w /= total;

  neighbors.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (const auto& tri : triangles)
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      if (seen.insert(std::minmax(a, b)).second) {
        neighbors[a].push_back(b);
        neighbors[b].push_back(a);
      }
    }
  for (auto& nb : neighbors) std::sort(nb.begin(), nb.end());

  for (const Vec3& v : vertices)
    if (std::abs(v.norm() - 1.0) > 1e-12)
      throw std::runtime_error("mesh vertex off the unit sphere");
  if (euler_characteristic() != 2) throw std::runtime_error("mesh is not a topological sphere");
}

int SphereMesh::edge_count() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& tri : triangles)
    for (int k = 0; k < 3; ++k) edges.insert(std::minmax(tri[k], tri[(k + 1) % 3]));
  return static_cast<int>(edges.size());
}

int SphereMesh::euler_characteristic() const {
  return vertex_count() - edge_count() + triangle_count();
}

bool SphereMesh::connected() const {
  UnionFind uf(vertex_count());
  for (const auto& tri : triangles) {
    uf.unite(tri[0], tri[1]);
    uf.unite(tri[1], tri[2]);
  }
  return uf.components() == 1;
}

int SphereMesh::locate(const Vec3& p, std::array<int, 3>& corners, Vec3& bary) const {
  Vec3 q = p.normalized();
  if (levels_.empty()) {
    // Imported mesh: brute force over triangles.
    double best = -1e300;
    int best_tri = 0;
    Vec3 best_bary;
    for (int t = 0; t < triangle_count(); ++t) {
      const auto& tri = triangles[t];
      Vec3 l = projective_bary(q, vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
      double m = l.minCoeff();
      if (m > best) {
        best = m;
        best_tri = t;
        best_bary = l;
      }
    }
    corners = triangles[best_tri];
    bary = best_bary;
    return best_tri;
  }

  int tri_idx = -1;
  double best = -1e300;
  const auto& base = levels_.front();
  for (int t = 0; t < static_cast<int>(base.triangles.size()); ++t) {
    const auto& tri = base.triangles[t];
    Vec3 l = projective_bary(q, base.vertices[tri[0]], base.vertices[tri[1]], base.vertices[tri[2]]);
    double m = l.minCoeff();
    if (m > best) {
      best = m;
      tri_idx = t;
    }
  }
  for (size_t lv = 1; lv < levels_.size(); ++lv) {
    const auto& data = levels_[lv];
    double child_best = -1e300;
    int child_idx = -1;
    for (int k = 0; k < 4; ++k) {
      int t = 4 * tri_idx + k;
      const auto& tri = data.triangles[t];
      Vec3 l =
          projective_bary(q, data.vertices[tri[0]], data.vertices[tri[1]], data.vertices[tri[2]]);
      double m = l.minCoeff();
      if (m > child_best) {
        child_best = m;
        child_idx = t;
      }
    }
    tri_idx = child_idx;
  }
  const auto& tri = levels_.back().triangles[tri_idx];
  Vec3 l = projective_bary(q, levels_.back().vertices[tri[0]], levels_.back().vertices[tri[1]],
                           levels_.back().vertices[tri[2]]);
  corners = {construction_to_final_[tri[0]], construction_to_final_[tri[1]],
             construction_to_final_[tri[2]]};
  bary = l;
  return tri_idx;
}

std::vector<int> SphereMesh::cap_vertices(const Vec3& center, double area) const {
  double radius = cap_angular_radius(area);
  Vec3 c = center.normalized();
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (std::acos(std::clamp(c.dot(vertices[v]), -1.0, 1.0)) <= radius) out.push_back(v);
  return out;
}

void SphereMesh::save_off(std::ostream& os) const {
  os << "OFF\n" << vertex_count() << ' ' << triangle_count() << " 0\n";
  os.precision(17);
  for (const Vec3& v : vertices) os << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

SphereMesh SphereMesh::load_off(std::istream& is) {
  std::string magic;
  is >> magic;
  if (magic != "OFF") throw std::runtime_error("load_off: missing OFF header");
  int nv = 0, nf = 0, ne = 0;
  is >> nv >> nf >> ne;
  if (!is || nv <= 0 || nf <= 0) throw std::runtime_error("load_off: bad counts");
  SphereMesh mesh;
  mesh.vertices.resize(nv);
  for (int i = 0; i < nv; ++i) {
    is >> mesh.vertices[i].x() >> mesh.vertices[i].y() >> mesh.vertices[i].z();
    mesh.vertices[i].normalize();
  }
  mesh.triangles.resize(nf);
  for (int i = 0; i < nf; ++i) {
    int deg = 0;
    is >> deg;
    if (deg != 3) throw std::runtime_error("load_off: only triangle meshes supported");
    is >> mesh.triangles[i][0] >> mesh.triangles[i][1] >> mesh.triangles[i][2];
  }
  if (!is) throw std::runtime_error("load_off: truncated file");
  mesh.finalize();
  return mesh;
}

}  // namespace qslab::geom
