#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qslab/bundle.hpp"
#include "qslab/flow.hpp"
#include "qslab/scalar_field.hpp"

namespace qslab::bundle {

using geom::HamiltonianPath;
using geom::ScalarField;

// Function on the bundle. Structured fields keep their profile and base
// factor so that fiber-wise statements evaluate without sampling artifacts.
struct BundleField {
  std::function<double(const ChartPoint&)> eval;
  std::optional<ThetaProfile> profile;
  std::optional<ScalarField> base;

  bool structured() const { return profile.has_value() && base.has_value(); }
  double operator()(const ChartPoint& p) const { return eval(p); }

  BundleField operator+(const BundleField&) const;
  BundleField operator-(const BundleField&) const;
  BundleField operator*(double) const;
  // Multiplies by a radial factor; structured fields stay structured.
  BundleField with_radial(const std::function<double(double)>& rho) const;
};

// theta(r) * H(pi(e)).
BundleField lift(const ScalarField& H, const ThetaProfile& theta);
// The pure pullback H(pi(e)).
BundleField pullback_field(const ScalarField& H);
// theta(r) as a bundle field.
BundleField radial_field(const std::function<double(double)>& f);

// Poisson bracket at a point, fourth-order differences with the given steps
// and the closed-form omega matrix. Antisymmetrized so that {f, f} is an
// exact zero. Throws within 1e-6 of the bundle boundary.
double bracket_at(const BundleField& f, const BundleField& g, const ChartPoint& p, double h_base,
                  double h_fiber);

// Fiber finite-difference step that keeps the stencil away from the profile
// knots where the interpolant is only C^2.
double safe_fiber_step(double r, double grid_step, const ThetaProfile& theta);

struct ResidualReport {
  double max_abs = 0.0;
  double max_rel = 0.0;   // max_abs / max reference magnitude
  double reference = 0.0; // max |rhs| over the samples
  int points = 0;
};

// Pointwise check of {Theta(H), Theta(K)} against both closed forms:
// theta^2 {pi*H, pi*K} and (theta/(1-r^2)) Theta({H,K}). The right-hand
// bracket runs through the stereographic base formula, an independent code
// path from the omega-matrix solve.
struct BracketIdentityReport {
  ResidualReport versus_pullbacks;  // lhs vs theta^2 {pi*H, pi*K}
  ResidualReport versus_base;       // lhs vs (theta/(1-r^2)) Theta({H,K})
};
BracketIdentityReport bracket_identity_residual(const ScalarField& H, const ScalarField& K,
                                                const ThetaProfile& theta,
                                                std::span<const ChartPoint> points, double h_base,
                                                double h_fiber);

// | pi_*(sgrad Theta(H)) - (theta/(1-r^2)) sgrad H | with the sphere-side
// field as the oracle.
ResidualReport sgrad_pushforward_residual(const ScalarField& H, const ThetaProfile& theta,
                                          std::span<const ChartPoint> points, double h_base,
                                          double h_fiber);

struct FiberIntegralResult {
  double radial_factor = 0.0;          // theta(0) + int theta' (1-r^2)^2
  double radial_factor_printed = 0.0;  // -int theta' (1-r^2)^2
  double base_integral = 0.0;
  double lhs = 0.0;  // radial_factor * base_integral
  double rhs = 0.0;  // bundle quadrature of Theta(H) omega^2
  double residual = 0.0;
};

// Two-sided fiber-integration identity. The by-parts boundary term theta(0)
// belongs in the radial factor: dropping it (the "printed" variant) fails
// against the honest chart quadrature already for H = 1.
FiberIntegralResult fiber_integral_residual(const ScalarField& H, const ThetaProfile& theta,
                                            const BundleGrid& grid);

// Time-dependent Hamiltonian on the bundle.
struct BundlePath {
  std::optional<ThetaProfile> theta;
  std::optional<HamiltonianPath> base;  // structured: theta(r) * F_t(pi(e))
  std::function<double(const ChartPoint&, double)> eval;

  double value(const ChartPoint& p, double t) const;
};

BundlePath lift_path(const HamiltonianPath& F, const ThetaProfile& theta);

// RK4 on the chart coordinates with automatic chart switching. Structured
// paths use the closed-form Hamiltonian vector field.
ChartPoint bundle_flow_point(const BundlePath& F, ChartPoint p, double t0, double t1, double dt);
ChartPoint inverse_bundle_flow_point(const BundlePath& F, ChartPoint p, double t, double dt);

struct CommutationReport {
  double max_base_distance = 0.0;  // sup_t d(pi(lifted flow), base flow)
  double max_r_drift = 0.0;
  int seeds = 0;
};

// Checks pi o lifted-flow = base-flow o pi along [0,1] for seeds with
// r <= 1 - eps, plus conservation of r. Throws for seeds beyond 1 - eps.
CommutationReport flow_commutation_residual(const HamiltonianPath& F, const ThetaProfile& theta,
                                            std::span<const ChartPoint> seeds, double dt,
                                            int time_checks);

// Sup over seeds and times of |(-Theta(F#G) + Theta(F)#Theta(G))| evaluated
// along the flow of Theta(F#G). The base group law is evaluated through the
// supplied closed-form inverse flow of F; everything upstairs is numerical.
double failure_term_residual(const HamiltonianPath& F,
                             const std::function<geom::Vec3(const geom::Vec3&, double)>& f_inverse,
                             const HamiltonianPath& G, const ThetaProfile& theta,
                             std::span<const ChartPoint> seeds, double dt, int time_checks);

}  // namespace qslab::bundle
