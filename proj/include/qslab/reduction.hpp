#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qslab/bundle_ops.hpp"
#include "qslab/flow.hpp"

namespace qslab::reduction {

using bundle::BundleField;
using bundle::BundleGrid;
using bundle::BundlePath;
using bundle::ChartPoint;
using bundle::ThetaProfile;
using geom::HamiltonianPath;
using geom::ScalarField;
using geom::SphereMesh;
using geom::Vec3;

struct QuasiStateFlags {
  bool monotone = false;
  bool normalized = false;
  bool quasilinear = false;
  bool vanishing = false;      // on fields with certified-displaceable support
  bool ham_invariant = false;
};

// Evaluator of a quasi-state on bundle fields. Every claimed flag is meant
// to be exercised by the harness property suite.
struct QuasiStateOracle {
  std::string name;
  std::function<double(const BundleField&)> evaluate;
  QuasiStateFlags flags;

  double operator()(const BundleField& f) const { return evaluate(f); }
};

// Evaluation at a fixed bundle point: linear, so trivially quasi-linear,
// monotone and normalized, but with no vanishing property.
QuasiStateOracle point_evaluation_oracle(const ChartPoint& p);

// Median level of the restriction to the zero section. Its reduction along
// any admissible profile is the median quasi-state of the base.
QuasiStateOracle zero_section_median_oracle(const SphereMesh& base);

// Normalized integral against omega^2.
QuasiStateOracle mean_oracle(const BundleGrid& grid);

class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// zeta_bar(F) = zeta(lift(F, theta)) / zeta(theta). Throws HypothesisError
// unless zeta(theta) > 0.
double reduce_quasi_state(const QuasiStateOracle& zeta, const ThetaProfile& theta,
                          const ScalarField& F);
// The normalizer zeta(theta) by itself.
double zeta_of_theta(const QuasiStateOracle& zeta, const ThetaProfile& theta,
                     const SphereMesh& mesh);

// Evaluator of a quasi-morphism on Hamiltonian paths (base or bundle side).
struct PathQuasiMorphismOracle {
  std::string name;
  std::function<double(const HamiltonianPath&)> eval_base;
  std::function<double(const BundlePath&)> eval_bundle;
  std::optional<double> stability_B;
  std::optional<double> defect_bound;
};

PathQuasiMorphismOracle zero_path_oracle();

// Space-time integral over a base vertex mask; stability constant
// 1 - weight(mask).
PathQuasiMorphismOracle calabi_mask_oracle(const SphereMesh& mesh, std::vector<int> mask);

// Space-time integral over {r0 <= r <= r1} on the bundle, optionally
// restricted over a base vertex mask. Structured lifted paths integrate by
// separating the radial factor; free-form paths fall back to the full chart
// quadrature.
PathQuasiMorphismOracle calabi_annulus_oracle(const SphereMesh& mesh, double r0, double r1,
                                              const BundleGrid& grid,
                                              std::vector<int> base_mask = {});

// Closed-form radial weight 4 * int_{r0}^{r1} theta(r)(1 - r^2) r dr of the
// annulus against a structured lift.
double annulus_radial_weight(const ThetaProfile& theta, double r0, double r1);

// zeta_mu(H) = (int H omega - mu(const path of H - mean)) / vol.
// Throws unless the oracle carries a stability constant.
double qs_from_qm(const PathQuasiMorphismOracle& mu, const ScalarField& H, double vol, int steps);

struct ReducedQuasiMorphism {
  double mu_hat = 0.0;  // mu(Theta_eps(F))
  double mu_bar = 0.0;  // mu_hat / normalizer
};

// Theorem-level reduction of a path quasi-morphism: evaluates mu on the
// lifted path. Requires slice-wise normalized F (within 1e-10) and a
// positive normalizer.
ReducedQuasiMorphism reduce_quasi_morphism(const PathQuasiMorphismOracle& mu, double eps,
                                           const HamiltonianPath& F, double normalizer);

struct ScaleCheck {
  double lhs = 0.0;  // mu(path lambda(t) H)
  double rhs = 0.0;  // (trapezoid integral of lambda) * mu(const path H)
  double residual = 0.0;
};

// mu(phi_{lambda H}) = (int lambda) mu(phi_H) for stable homogeneous mu.
ScaleCheck scale_identity_check(const PathQuasiMorphismOracle& mu,
                                const std::function<double(double)>& lambda, const ScalarField& H,
                                int steps);

struct LiftDisplacerResult {
  double min_separation = 0.0;  // base angular clearance of flowed samples
  bool certified = false;
  int samples = 0;
};

// Lifts a displacing isotopy of the cap (center, area) and certifies that
// its time-1 flow moves pi^{-1}(cap) cut at r <= a off itself. Requires
// a < 1 - eps and a valid base displacement.
LiftDisplacerResult lift_displacer(const HamiltonianPath& G, const Vec3& cap_center,
                                   double cap_area, double eps, double a, double dt, int samples);

// Named oracle registry for CLI configs.
//   quasi-states:     "median" | "point:u,v[,chart]" | "mean"
//   quasi-morphisms:  "zero" | "calabi:area" (polar cap mask)
//                     | "calabi-annulus:r0,r1"
// Throws std::invalid_argument for unknown specs.
QuasiStateOracle make_quasi_state_oracle(const std::string& spec, const SphereMesh& base,
                                         const BundleGrid& grid);
PathQuasiMorphismOracle make_path_oracle(const std::string& spec, const SphereMesh& base,
                                         const BundleGrid& grid);

}  // namespace qslab::reduction
