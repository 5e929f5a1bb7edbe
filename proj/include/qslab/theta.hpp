#pragma once

namespace qslab::bundle {

// Radial profile of the lift: equal to 1 - r^2 up to radius 1-eps, zero from
// 1-eps/2 outward, C^2 across the transition band. The interpolant is
// (1 - r^2) * psi(r) with a quintic cutoff psi, so the inner region is exact
// and the profile stays nonnegative and nonincreasing.
class ThetaProfile {
 public:
  // Throws for eps outside (0, 1/2).
  static ThetaProfile interpolating(double eps);
  // The boundary-degenerate surrogate theta(r) = 1 - r^2 on all of [0, 1].
  static ThetaProfile parabola();

  double eps() const { return eps_; }
  bool is_surrogate() const { return surrogate_; }

  double operator()(double r) const;
  double deriv(double r) const;
  // theta'(r)/r, finite at r = 0 (equals -2 on the inner region).
  double deriv_over_r(double r) const;

  double inner_radius() const;    // 1 - eps (1 for the surrogate)
  double support_radius() const;  // 1 - eps/2 (1 for the surrogate)

 private:
  ThetaProfile(double eps, bool surrogate) : eps_(eps), surrogate_(surrogate) {}
  double cutoff(double r) const;
  double cutoff_deriv(double r) const;

  double eps_;
  bool surrogate_;
};

}  // namespace qslab::bundle
