#include "qslab/bundle_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "qslab/numerics.hpp"

namespace qslab::bundle {

using geom::Vec3;

BundleField BundleField::operator+(const BundleField& rhs) const {
  auto f = eval, g = rhs.eval;
  return BundleField{[f, g](const ChartPoint& p) { return f(p) + g(p); }, std::nullopt,
                     std::nullopt};
}

BundleField BundleField::operator-(const BundleField& rhs) const {
  auto f = eval, g = rhs.eval;
  return BundleField{[f, g](const ChartPoint& p) { return f(p) - g(p); }, std::nullopt,
                     std::nullopt};
}

BundleField BundleField::operator*(double c) const {
  auto f = eval;
  return BundleField{[f, c](const ChartPoint& p) { return c * f(p); }, profile, base};
}

BundleField BundleField::with_radial(const std::function<double(double)>& rho) const {
  auto f = eval;
  return BundleField{[f, rho](const ChartPoint& p) { return f(p) * rho(p.r()); }, profile, base};
}

BundleField lift(const ScalarField& H, const ThetaProfile& theta) {
  ScalarField base = H;
  return BundleField{[theta, base](const ChartPoint& p) {
                       return theta(p.r()) * base.eval(atlas::base_point(p));
                     },
                     theta, H};
}

BundleField pullback_field(const ScalarField& H) {
  ScalarField base = H;
  return BundleField{[base](const ChartPoint& p) { return base.eval(atlas::base_point(p)); },
                     std::nullopt, H};
}

BundleField radial_field(const std::function<double(double)>& f) {
  return BundleField{[f](const ChartPoint& p) { return f(p.r()); }, std::nullopt, std::nullopt};
}

namespace {

ChartPoint shifted(const ChartPoint& p, int axis, double d) {
  ChartPoint q = p;
  switch (axis) {
    case 0: q.u += d; break;
    case 1: q.v += d; break;
    case 2: q.a += d; break;
    default: q.b += d; break;
  }
  return q;
}

Vec4 gradient4(const BundleField& f, const ChartPoint& p, double h_base, double h_fiber) {
  Vec4 g;
  for (int i = 0; i < 4; ++i) {
    double h = i < 2 ? h_base : h_fiber;
    g[i] = (f(shifted(p, i, -2 * h)) - f(shifted(p, i, 2 * h)) +
            8.0 * (f(shifted(p, i, h)) - f(shifted(p, i, -h)))) /
           (12.0 * h);
  }
  return g;
}

void require_interior(const ChartPoint& p) {
  if (p.r2() >= (1.0 - 1e-6) * (1.0 - 1e-6))
    throw std::domain_error("bundle bracket evaluated too close to the boundary r = 1");
}

}  // namespace

double safe_fiber_step(double r, double grid_step, const ThetaProfile& theta) {
  double dist = 1.0 - r;  // boundary
  if (!theta.is_surrogate()) {
    dist = std::min(dist, std::abs(theta.inner_radius() - r));
    dist = std::min(dist, std::abs(theta.support_radius() - r));
  }
  double cap = std::max(5e-4, 0.4 * dist);
  return std::min(grid_step, cap);
}

double bracket_at(const BundleField& f, const BundleField& g, const ChartPoint& p, double h_base,
                  double h_fiber) {
  require_interior(p);
  Mat4 omega = atlas::omega(p);
  Vec4 gf = gradient4(f, p, h_base, h_fiber);
  Vec4 gg = gradient4(g, p, h_base, h_fiber);
  Vec4 xf = atlas::hamiltonian_vector(omega, gf);
  Vec4 xg = atlas::hamiltonian_vector(omega, gg);
  return 0.5 * (gf.dot(xg) - gg.dot(xf));
}

namespace {

// Base bracket through the sphere-side route 4*pi * n . (grad K x grad H),
// evaluated with the intrinsic tangent-gradient machinery. Keeping this off
// the chart coordinates makes it genuinely independent of the omega-matrix
// path: the chart finite differences would otherwise cancel against the
// bundle side error for error.
double base_bracket_sphere(const ScalarField& H, const ScalarField& K, const Vec3& p) {
  Vec3 n = p.normalized();
  return kFourPi * n.dot(K.grad(n).cross(H.grad(n)));
}

}  // namespace

BracketIdentityReport bracket_identity_residual(const ScalarField& H, const ScalarField& K,
                                                const ThetaProfile& theta,
                                                std::span<const ChartPoint> points, double h_base,
                                                double h_fiber) {
  BundleField th = lift(H, theta), tk = lift(K, theta);
  BundleField ph = pullback_field(H), pk = pullback_field(K);
  BracketIdentityReport report;
  double ref_mid = 0.0, ref_base = 0.0;
  std::vector<double> lhs(points.size()), mid(points.size()), rhs(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    const ChartPoint& p = points[i];
    double hf = safe_fiber_step(p.r(), h_fiber, theta);
    lhs[i] = bracket_at(th, tk, p, h_base, hf);
    double t = theta(p.r());
    mid[i] = t * t * bracket_at(ph, pk, p, h_base, hf);
    double base = base_bracket_sphere(H, K, atlas::base_point(p));
    rhs[i] = t / (1.0 - p.r2()) * t * base;
    ref_mid = std::max(ref_mid, std::abs(mid[i]));
    ref_base = std::max(ref_base, std::abs(rhs[i]));
  }
  report.versus_pullbacks.points = report.versus_base.points = static_cast<int>(points.size());
  report.versus_pullbacks.reference = ref_mid;
  report.versus_base.reference = ref_base;
  for (size_t i = 0; i < points.size(); ++i) {
    report.versus_pullbacks.max_abs = std::max(report.versus_pullbacks.max_abs,
                                               std::abs(lhs[i] - mid[i]));
    report.versus_base.max_abs = std::max(report.versus_base.max_abs, std::abs(lhs[i] - rhs[i]));
  }
  report.versus_pullbacks.max_rel = report.versus_pullbacks.max_abs / std::max(ref_mid, 1e-300);
  report.versus_base.max_rel = report.versus_base.max_abs / std::max(ref_base, 1e-300);
  return report;
}

ResidualReport sgrad_pushforward_residual(const ScalarField& H, const ThetaProfile& theta,
                                          std::span<const ChartPoint> points, double h_base,
                                          double h_fiber) {
  BundleField th = lift(H, theta);
  ResidualReport report;
  report.points = static_cast<int>(points.size());
  for (const ChartPoint& p : points) {
    double hf = safe_fiber_step(p.r(), h_fiber, theta);
    Mat4 omega = atlas::omega(p);
    Vec4 grad = gradient4(th, p, h_base, hf);
    Vec4 x = atlas::hamiltonian_vector(omega, grad);
    // Push the base component through the chart embedding.
    auto emb = [&](double uu, double vv) { return atlas::embed(p.chart, uu, vv); };
    double h = 1e-5;
    Vec3 eu = (emb(p.u - 2 * h, p.v) - emb(p.u + 2 * h, p.v) +
               8.0 * (emb(p.u + h, p.v) - emb(p.u - h, p.v))) /
              (12.0 * h);
    Vec3 ev = (emb(p.u, p.v - 2 * h) - emb(p.u, p.v + 2 * h) +
               8.0 * (emb(p.u, p.v + h) - emb(p.u, p.v - h))) /
              (12.0 * h);
    Vec3 pushed = x[0] * eu + x[1] * ev;
    Vec3 oracle = theta(p.r()) / (1.0 - p.r2()) * geom::sgrad_at(H, atlas::base_point(p));
    report.max_abs = std::max(report.max_abs, (pushed - oracle).norm());
    report.reference = std::max(report.reference, oracle.norm());
  }
  report.max_rel = report.max_abs / std::max(report.reference, 1e-300);
  return report;
}

FiberIntegralResult fiber_integral_residual(const ScalarField& H, const ThetaProfile& theta,
                                            const BundleGrid& grid) {
  FiberIntegralResult result;
  auto integrand_true = [&](double r) {
    double q = 1.0 - r * r;
    return theta.deriv(r) * q * q;
  };
  result.radial_factor = theta(0.0) + integrate_gl(integrand_true, 0.0, 1.0, 200);
  result.radial_factor_printed = -integrate_gl(integrand_true, 0.0, 1.0, 200);
  result.base_integral = geom::integrate(H);
  result.lhs = result.radial_factor * result.base_integral;
  BundleField th = lift(H, theta);
  result.rhs = bundle_integral([&](const ChartPoint& p) { return th(p); }, grid);
  result.residual = std::abs(result.lhs - result.rhs) / std::max(std::abs(result.lhs), 1.0);
  return result;
}

double BundlePath::value(const ChartPoint& p, double t) const {
  if (eval) return eval(p, t);
  return (*theta)(p.r()) * base->value(atlas::base_point(p), t);
}

BundlePath lift_path(const HamiltonianPath& F, const ThetaProfile& theta) {
  BundlePath out;
  out.theta = theta;
  out.base = F;
  return out;
}

namespace {

struct State {
  double u, v, a, b;
};

// Hamiltonian vector field of a bundle path at (p, t).
State velocity(const BundlePath& F, const ChartPoint& p, double t) {
  if (F.theta && F.base) {
    const ThetaProfile& theta = *F.theta;
    double r2 = p.r2();
    double r = std::sqrt(r2);
    double S = (1.0 - r2) * atlas::sigma_density(p.u, p.v);
    Vec2 A = atlas::connection(p.u, p.v);
    double th = theta(r);
    double dor = theta.deriv_over_r(r);
    const double h = 1e-4;
    auto fval = [&](double uu, double vv) {
      return F.base->value(atlas::embed(p.chart, uu, vv), t);
    };
    double Fu = (fval(p.u - 2 * h, p.v) - fval(p.u + 2 * h, p.v) +
                 8.0 * (fval(p.u + h, p.v) - fval(p.u - h, p.v))) /
                (12.0 * h);
    double Fv = (fval(p.u, p.v - 2 * h) - fval(p.u, p.v + 2 * h) +
                 8.0 * (fval(p.u, p.v + h) - fval(p.u, p.v - h))) /
                (12.0 * h);
    double fc = fval(p.u, p.v);
    double xu = -th * Fv / S;
    double xv = th * Fu / S;
    double ax = A[0] * xu + A[1] * xv;
    double xa = kPi * p.b * (2.0 * ax - dor * fc);
    double xb = kPi * p.a * (dor * fc - 2.0 * ax);
    return State{xu, xv, xa, xb};
  }
  Mat4 omega = atlas::omega(p);
  BundleField frozen{[&F, t](const ChartPoint& q) { return F.value(q, t); }, std::nullopt,
                     std::nullopt};
  Vec4 g = gradient4(frozen, p, 1e-4, 1e-4);
  Vec4 x = atlas::hamiltonian_vector(omega, g);
  return State{x[0], x[1], x[2], x[3]};
}

ChartPoint advance(const ChartPoint& p, const State& k, double h) {
  ChartPoint q = p;
  q.u += h * k.u;
  q.v += h * k.v;
  q.a += h * k.a;
  q.b += h * k.b;
  return q;
}

}  // namespace

ChartPoint bundle_flow_point(const BundlePath& F, ChartPoint p, double t0, double t1, double dt) {
  if (!(dt > 1e-12)) throw std::invalid_argument("bundle flow step underflow");
  double span = t1 - t0;
  if (std::abs(span) < 1e-12) return p;
  int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / dt)));
  double h = span / n;
  for (int i = 0; i < n; ++i) {
    double t = t0 + i * h;
    State k1 = velocity(F, p, t);
    State k2 = velocity(F, advance(p, k1, 0.5 * h), t + 0.5 * h);
    State k3 = velocity(F, advance(p, k2, 0.5 * h), t + 0.5 * h);
    State k4 = velocity(F, advance(p, k3, h), t + h);
    ChartPoint q = p;
    q.u += h / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u);
    q.v += h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
    q.a += h / 6.0 * (k1.a + 2 * k2.a + 2 * k3.a + k4.a);
    q.b += h / 6.0 * (k1.b + 2 * k2.b + 2 * k3.b + k4.b);
    p = atlas::normalize_chart(q);
  }
  return p;
}

ChartPoint inverse_bundle_flow_point(const BundlePath& F, ChartPoint p, double t, double dt) {
  if (t < 1e-12) return p;
  BundlePath reversed;
  auto base_path = F;
  reversed.eval = [base_path, t](const ChartPoint& q, double s) {
    return -base_path.value(q, t - s);
  };
  if (F.theta && F.base) {
    // Keep the structured fast path: negate and time-reverse the base.
    geom::HamiltonianPath rb;
    rb.mesh = F.base->mesh;
    rb.steps = F.base->steps;
    auto fb = *F.base;
    rb.smooth = [fb, t](const Vec3& x, double s) { return -fb.value(x, t - s); };
    reversed = lift_path(rb, *F.theta);
  }
  return bundle_flow_point(reversed, p, 0.0, t, dt);
}

CommutationReport flow_commutation_residual(const HamiltonianPath& F, const ThetaProfile& theta,
                                            std::span<const ChartPoint> seeds, double dt,
                                            int time_checks) {
  CommutationReport report;
  report.seeds = static_cast<int>(seeds.size());
  BundlePath lifted = lift_path(F, theta);
  for (const ChartPoint& seed : seeds) {
    if (seed.r() > theta.inner_radius() + 1e-12)
      throw std::invalid_argument("flow_commutation_residual: seed beyond r = 1 - eps");
    ChartPoint e = seed;
    Vec3 basept = atlas::base_point(seed);
    double r0 = seed.r();
    double prev_t = 0.0;
    for (int j = 1; j <= time_checks; ++j) {
      double t = static_cast<double>(j) / time_checks;
      e = bundle_flow_point(lifted, e, prev_t, t, dt);
      basept = geom::flow_point(F, basept, prev_t, t, dt);
      prev_t = t;
      Vec3 projected = atlas::base_point(e);
      double dist = std::acos(std::clamp(projected.dot(basept), -1.0, 1.0));
      report.max_base_distance = std::max(report.max_base_distance, dist);
      report.max_r_drift = std::max(report.max_r_drift, std::abs(e.r() - r0));
    }
  }
  return report;
}

double failure_term_residual(const HamiltonianPath& F,
                             const std::function<Vec3(const Vec3&, double)>& f_inverse,
                             const HamiltonianPath& G, const ThetaProfile& theta,
                             std::span<const ChartPoint> seeds, double dt, int time_checks) {
  // Base group law with the supplied closed-form inverse flow of F.
  HamiltonianPath sharp_base;
  sharp_base.mesh = F.mesh;
  sharp_base.steps = std::max(F.steps, G.steps);
  auto fF = F, fG = G;
  sharp_base.smooth = [fF, fG, f_inverse](const Vec3& x, double t) {
    return fF.value(x, t) + fG.value(f_inverse(x, t), t);
  };

  BundlePath lifted_sharp = lift_path(sharp_base, theta);
  BundlePath lifted_F = lift_path(F, theta);
  BundlePath lifted_G = lift_path(G, theta);

  double worst = 0.0;
  for (const ChartPoint& seed : seeds) {
    if (seed.r() > theta.inner_radius() + 1e-12)
      throw std::invalid_argument("failure_term_residual: seed beyond r = 1 - eps");
    ChartPoint e = seed;
    double prev_t = 0.0;
    for (int j = 1; j <= time_checks; ++j) {
      double t = static_cast<double>(j) / time_checks;
      e = bundle_flow_point(lifted_sharp, e, prev_t, t, dt);
      prev_t = t;
      double lhs = lifted_sharp.value(e, t);
      ChartPoint pre = inverse_bundle_flow_point(lifted_F, e, t, dt);
      double rhs = lifted_F.value(e, t) + lifted_G.value(pre, t);
      worst = std::max(worst, std::abs(rhs - lhs));
    }
  }
  return worst;
}

}  // namespace qslab::bundle
