#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qslab/sphere_mesh.hpp"
#include "qslab/theta.hpp"

namespace qslab::bundle {

using geom::Vec3;
using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Point of the disk bundle in one of two stereographic base charts with
// Cartesian fiber coordinates (a, b) = r (cos phi, sin phi). The Cartesian
// fiber keeps the symplectic matrix nondegenerate through r = 0; polar
// components are derived views.
struct ChartPoint {
  int chart = 0;  // 0: projection from the south pole, 1: from the north
  double u = 0.0, v = 0.0;
  double a = 0.0, b = 0.0;

  double r2() const { return a * a + b * b; }
  double r() const;
  double phi() const;

  static ChartPoint from_polar(int chart, double u, double v, double r, double phi);
};

namespace atlas {

// Base chart maps. Chart 0 covers the sphere minus the south pole with
// (u, v) = (x, y)/(1+z); chart 1 covers the complement of the north pole
// with (u', v') = (x, -y)/(1-z). The transition is w' = 1/w on w = u + iv.
Vec3 embed(int chart, double u, double v);
bool base_coords(int chart, const Vec3& p, double& u, double& v);

// Density of the normalized area form: sigma = s(u,v) du ^ dv with total
// integral one; the same formula serves both charts.
double sigma_density(double u, double v);

// Connection coefficients (A_u, A_v) with dA = -sigma; alpha = dphi/2pi + A.
Vec2 connection(double u, double v);

// Degree-one transition: base inversion plus fiber rotation by the base
// angle. An involution.
ChartPoint to_other_chart(const ChartPoint& p);
// Switches charts when the base point leaves |w|^2 <= switch_rho2.
ChartPoint normalize_chart(const ChartPoint& p, double switch_rho2 = 2.25);

Vec3 base_point(const ChartPoint& p);

// The symplectic matrix in (u, v, a, b) coordinates, assembled from the
// closed-form pieces (1-r^2) sigma + da^db/pi + 2(a da + b db) ^ A.
Mat4 omega(const ChartPoint& p);

// Independent route: numerical exterior derivative of the primitive
// -(1-r^2) alpha by sixth-order differences. Valid away from r = 0.
Mat4 omega_from_potential(const ChartPoint& p, double h);

// The same 2-form in (u, v, r, phi) coordinates, for 0 < r < 1.
Mat4 omega_polar(const ChartPoint& p);

double pfaffian(const Mat4& omega);

// Solves omega(X, .) = -df, i.e. omega * X = grad f.
Vec4 hamiltonian_vector(const Mat4& omega, const Vec4& grad);

// max |dA + sigma| over the sample base points, by finite differences of the
// connection with step h.
double curvature_residual(int chart, const std::vector<Vec2>& base_points, double h);

// max over overlap points of |J^T alpha(other chart) - alpha(this chart)|
// where J is the transition Jacobian: the connection and fiber form glue to
// a global 1-form.
double transition_alpha_residual(const std::vector<ChartPoint>& points, double h);

// max |J^T Omega' J - Omega| over overlap points.
double transition_omega_residual(const std::vector<ChartPoint>& points, double h);

}  // namespace atlas

// Structured sample lattice and quadrature description for the bundle.
struct BundleGrid {
  int nu = 32, nv = 32, nr = 16, nphi = 8;
  double base_extent = 2.0;  // u, v in [-extent, extent]
  double r_max = 0.999;

  // Deterministic residual sample points in both charts, r <= rmax.
  std::vector<ChartPoint> sample_points(double rmax) const;
  double base_step() const { return 2.0 * base_extent / nu; }
  double fiber_step(double rmax) const { return rmax / nr; }
};

// Integral of f against omega^2 over the bundle, two-chart quadrature with a
// partition of unity in the base height z.
double bundle_integral(const std::function<double(const ChartPoint&)>& f, const BundleGrid& grid);

// Fiber symplectic area by explicit quadrature of d(r^2 alpha) over a disk.
double fiber_area_quadrature(int nr, int nphi);

}  // namespace qslab::bundle
