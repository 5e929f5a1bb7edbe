#include "qslab/theta.hpp"

#include <stdexcept>

#include "qslab/numerics.hpp"

namespace qslab::bundle {

ThetaProfile ThetaProfile::interpolating(double eps) {
  if (!(eps > 0.0) || !(eps < 0.5))
    throw std::invalid_argument("theta profile: eps must lie in (0, 1/2)");
  return ThetaProfile(eps, false);
}

ThetaProfile ThetaProfile::parabola() { return ThetaProfile(0.0, true); }

double ThetaProfile::cutoff(double r) const {
  if (surrogate_) return 1.0;
  double lo = 1.0 - eps_, hi = 1.0 - eps_ / 2.0;
  if (r <= lo) return 1.0;
  if (r >= hi) return 0.0;
  return 1.0 - smootherstep((r - lo) / (hi - lo));
}

double ThetaProfile::cutoff_deriv(double r) const {
  if (surrogate_) return 0.0;
  double lo = 1.0 - eps_, hi = 1.0 - eps_ / 2.0;
  if (r <= lo || r >= hi) return 0.0;
  return -smootherstep_deriv((r - lo) / (hi - lo)) / (hi - lo);
}

double ThetaProfile::operator()(double r) const {
  if (r >= 1.0) return 0.0;
  double psi = cutoff(r);
  return psi == 0.0 ? 0.0 : (1.0 - r * r) * psi;
}

double ThetaProfile::deriv(double r) const {
  if (r >= 1.0) return 0.0;
  double psi = cutoff(r);
  double dpsi = cutoff_deriv(r);
  return -2.0 * r * psi + (1.0 - r * r) * dpsi;
}

double ThetaProfile::deriv_over_r(double r) const {
  if (r >= 1.0) return 0.0;
  double psi = cutoff(r);
  double dpsi = cutoff_deriv(r);
  // The cutoff is active only for r > 1/2, so dividing by r is safe there.
  return -2.0 * psi + (dpsi == 0.0 ? 0.0 : (1.0 - r * r) * dpsi / r);
}

double ThetaProfile::inner_radius() const { return surrogate_ ? 1.0 : 1.0 - eps_; }
double ThetaProfile::support_radius() const { return surrogate_ ? 1.0 : 1.0 - eps_ / 2.0; }

}  // namespace qslab::bundle
