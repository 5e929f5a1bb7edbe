#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <vector>

namespace qslab::geom {

using Vec3 = Eigen::Vector3d;

// Triangulated unit sphere with a lumped vertex area measure normalized to
// total mass one. Icospheres carry a subdivision hierarchy used for fast
// point location; meshes loaded from OFF fall back to a brute-force walk.
//
// Vertices of an icosphere are ordered by decreasing z (ties by longitude),
// which makes index-order tie-breaking sweep the sphere pole to pole.
class SphereMesh {
 public:
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> vertex_weights;
  std::vector<std::vector<int>> neighbors;
  int level = -1;  // subdivision level, -1 for imported meshes

  static SphereMesh icosphere(int level);

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  int edge_count() const;
  int euler_characteristic() const;
  bool connected() const;

  // Containing triangle of the ray through p, with barycentric weights of
  // its corners. Returns the triangle index.
  int locate(const Vec3& p, std::array<int, 3>& corners, Vec3& bary) const;

  // Area of the spherical cap around `center` covering `area` fraction of
  // the sphere; helper shared by fixtures.
  std::vector<int> cap_vertices(const Vec3& center, double area) const;

  void save_off(std::ostream& os) const;
  static SphereMesh load_off(std::istream& is);

 private:
  // Per-level triangle tables in construction (pre-permutation) vertex
  // numbering, used by locate().
  struct LevelData {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
  };
  std::vector<LevelData> levels_;
  std::vector<int> construction_to_final_;

  void finalize();  // weights, neighbors, orientation, validation
  friend SphereMesh build_icosphere(int);
};

// Angular radius of a spherical cap with the given normalized area in (0, 1).
double cap_angular_radius(double area);

}  // namespace qslab::geom
