#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "qslab/sphere_mesh.hpp"

namespace qslab::geom {

using SmoothFn = std::function<double(const Vec3&)>;

// Sampled function on the mesh vertices, optionally backed by a smooth
// closure valid near the sphere. Fields are immutable after construction.
struct ScalarField {
  const SphereMesh* mesh = nullptr;
  std::vector<double> values;
  SmoothFn smooth;  // may be empty

  static ScalarField sample(const SphereMesh& mesh, const SmoothFn& f);
  static ScalarField from_values(const SphereMesh& mesh, std::vector<double> v);
  static ScalarField constant(const SphereMesh& mesh, double c);

  double operator[](int v) const { return values[v]; }

  // Value at an arbitrary sphere point: the closure when present, otherwise
  // barycentric interpolation.
  double eval(const Vec3& p) const;

  // Tangent gradient at p. Closure-backed fields use fourth-order central
  // differences of the closure; sampled fields interpolate the per-vertex
  // least-squares gradients.
  Vec3 grad(const Vec3& p) const;

  ScalarField operator+(const ScalarField&) const;
  ScalarField operator-(const ScalarField&) const;
  ScalarField operator*(double) const;
  ScalarField shifted(double c) const;

  double max_abs() const;
  double mean() const;  // == integrate(*this)
};

// Weighted vertex sum; the mean, since the weights sum to one.
double integrate(const ScalarField& H);

// Per-vertex tangent gradients from a least-squares fit over the 1-ring.
// Throws if some vertex has fewer than 3 neighbors.
std::vector<Vec3> vertex_gradients(const ScalarField& H);

// Discrete Poisson bracket for the normalized round area form (total area
// one): {H, K} = 4*pi * n . (grad K x grad H). Both fields must share a mesh.
ScalarField poisson_bracket(const ScalarField& H, const ScalarField& K);

// Hamiltonian vector field at p for the same normalization:
// sgrad H = 4*pi * n x grad H.
Vec3 sgrad_at(const ScalarField& H, const Vec3& p);

// CSV io: "vertex_index,value" lines.
void save_field_csv(const ScalarField&, std::ostream&);
ScalarField load_field_csv(const SphereMesh&, std::istream&);

}  // namespace qslab::geom
