#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qslab/scalar_field.hpp"

namespace qslab::geom {

// Time-dependent Hamiltonian on the uniform grid t_i = i/steps. `slices` may
// be empty when a space-time closure is present; operations sample lazily.
struct HamiltonianPath {
  const SphereMesh* mesh = nullptr;
  int steps = 0;
  std::vector<ScalarField> slices;                      // steps + 1 when present
  std::function<double(const Vec3&, double)> smooth;    // optional (p, t)

  double value(const Vec3& p, double t) const;
  // Hamiltonian vector field 4*pi * n x grad at (p, t).
  Vec3 sgrad(const Vec3& p, double t) const;
  // Vertex samples of the time-t slice.
  ScalarField slice(double t) const;
  double slice_mean(int i) const;

  static HamiltonianPath constant(const ScalarField& H, int steps);
  static HamiltonianPath time_scaled(const ScalarField& H,
                                     const std::function<double(double)>& lambda, int steps);
  static HamiltonianPath from_closure(const SphereMesh& mesh,
                                      std::function<double(const Vec3&, double)> f, int steps);

  // Slice-wise mesh mean subtracted; closures get the same shift.
  HamiltonianPath normalized() const;

 private:
  mutable std::vector<std::vector<Vec3>> slice_grads_;  // cache for sampled paths
  void ensure_slice_grads() const;
};

struct FlowMap {
  std::vector<double> times;
  std::vector<std::vector<Vec3>> trajectories;  // [seed][time]
  double dt = 0.0;
};

// RK4 integration of dp/dt = sgrad F_t(p) with per-step re-projection to the
// sphere. Throws on a vanishing step.
Vec3 flow_point(const HamiltonianPath& F, Vec3 p, double t0, double t1, double dt);
// f_t^{-1}(x) by integrating the reversed field.
Vec3 inverse_flow_point(const HamiltonianPath& F, Vec3 x, double t, double dt);

FlowMap hamiltonian_flow(const HamiltonianPath& F, std::span<const Vec3> seeds, double dt);

// Path group law (F#G)(x,t) = F(x,t) + G(f_t^{-1}(x), t) and the inverse
// path bar(F)(x,t) = -F(f_t(x), t); both evaluate flows on demand.
HamiltonianPath sharp(const HamiltonianPath& F, const HamiltonianPath& G, double dt);
HamiltonianPath bar(const HamiltonianPath& F, double dt);

// Space-time integral over the masked vertices by the trapezoid rule.
// Throws when some slice exceeds 1e-12 off the mask.
double calabi(const HamiltonianPath& F, const std::vector<int>& mask);

// Autonomous Hamiltonian -(u.p)/4 whose time-1 map is the rotation by pi
// about an axis u orthogonal to the cap center; it displaces every cap of
// area < 1/2. Throws for area >= 1/2.
HamiltonianPath displacing_rotation(const SphereMesh& mesh, const Vec3& cap_center,
                                    double cap_area, int steps);

struct DisplacementCertificate {
  bool disjoint = false;
  double min_separation = 0.0;  // angular distance from image samples to the cap
  Vec3 closest_image = Vec3::Zero();
};

// Flows boundary and interior samples of the cap to time one and measures
// their angular clearance from the closed cap.
DisplacementCertificate verify_cap_displacement(const HamiltonianPath& F, const Vec3& cap_center,
                                                double cap_area, int samples, double dt);

// Zonal Hamiltonian a(z): the flow is the z-axis rotation by angle
// -4*pi*a'(z)*t, available in closed form for oracles and cheap inverses.
struct ZonalFlow {
  std::function<double(double)> profile;     // a
  std::function<double(double)> derivative;  // a'

  Vec3 flow(const Vec3& p, double t) const;
  Vec3 inverse(const Vec3& p, double t) const;
  HamiltonianPath path(const SphereMesh& mesh, int steps) const;
};

}  // namespace qslab::geom
