#include "qslab/reduction.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qslab/numerics.hpp"
#include "qslab/reeb.hpp"

namespace qslab::reduction {

QuasiStateOracle point_evaluation_oracle(const ChartPoint& p) {
  QuasiStateOracle oracle;
  oracle.name = "point:" + std::to_string(p.chart);
  oracle.evaluate = [p](const BundleField& f) { return f(p); };
  oracle.flags = {true, true, true, false, false};
  return oracle;
}

QuasiStateOracle zero_section_median_oracle(const SphereMesh& base) {
  QuasiStateOracle oracle;
  oracle.name = "zero-section-median";
  const SphereMesh* mesh = &base;
  oracle.evaluate = [mesh](const BundleField& f) {
    std::vector<double> values(mesh->vertex_count());
    for (int v = 0; v < mesh->vertex_count(); ++v) {
      const Vec3& p = mesh->vertices[v];
      ChartPoint cp;
      cp.chart = p.z() >= 0.0 ? 0 : 1;
      if (!bundle::atlas::base_coords(cp.chart, p, cp.u, cp.v))
        throw std::logic_error("zero-section oracle: chart selection failed");
      values[v] = f(cp);
    }
    return reeb::zeta_med(ScalarField::from_values(*mesh, std::move(values)));
  };
  oracle.flags = {true, true, true, true, true};
  return oracle;
}

QuasiStateOracle mean_oracle(const BundleGrid& grid) {
  QuasiStateOracle oracle;
  oracle.name = "mean";
  double vol = bundle::bundle_integral([](const ChartPoint&) { return 1.0; }, grid);
  oracle.evaluate = [grid, vol](const BundleField& f) {
    return bundle::bundle_integral([&f](const ChartPoint& p) { return f(p); }, grid) / vol;
  };
  oracle.flags = {true, true, false, false, false};
  return oracle;
}

double zeta_of_theta(const QuasiStateOracle& zeta, const ThetaProfile& theta,
                     const SphereMesh& mesh) {
  return zeta(bundle::lift(ScalarField::constant(mesh, 1.0), theta));
}

double reduce_quasi_state(const QuasiStateOracle& zeta, const ThetaProfile& theta,
                          const ScalarField& F) {
  double denom = zeta_of_theta(zeta, theta, *F.mesh);
  if (!(denom > 0.0))
    throw HypothesisError("reduce_quasi_state: zeta(theta) = " + std::to_string(denom) +
                          " violates the positivity hypothesis");
  return zeta(bundle::lift(F, theta)) / denom;
}

PathQuasiMorphismOracle zero_path_oracle() {
  PathQuasiMorphismOracle oracle;
  oracle.name = "zero";
  oracle.eval_base = [](const HamiltonianPath&) { return 0.0; };
  oracle.eval_bundle = [](const BundlePath&) { return 0.0; };
  oracle.stability_B = 1.0;
  oracle.defect_bound = 0.0;
  return oracle;
}

namespace {

double masked_time_integral(const SphereMesh& mesh, const std::vector<int>& mask,
                            const std::function<double(const Vec3&, double)>& value, int steps) {
  double integral = 0.0;
  for (int i = 0; i <= steps; ++i) {
    double t = static_cast<double>(i) / steps;
    double inside = 0.0;
    for (int v : mask) inside += value(mesh.vertices[v], t) * mesh.vertex_weights[v];
    integral += (i == 0 || i == steps ? 0.5 : 1.0) * inside / steps;
  }
  return integral;
}

}  // namespace

PathQuasiMorphismOracle calabi_mask_oracle(const SphereMesh& mesh, std::vector<int> mask) {
  PathQuasiMorphismOracle oracle;
  oracle.name = "calabi-mask";
  double mask_weight = 0.0;
  for (int v : mask) mask_weight += mesh.vertex_weights[v];
  const SphereMesh* m = &mesh;
  oracle.eval_base = [m, mask](const HamiltonianPath& F) {
    int steps = std::max(F.steps, 8);
    return masked_time_integral(*m, mask,
                                [&F](const Vec3& p, double t) { return F.value(p, t); }, steps);
  };
  oracle.stability_B = 1.0 - mask_weight;
  oracle.defect_bound = 0.0;  // a genuine homomorphism on mask-supported paths
  return oracle;
}

double annulus_radial_weight(const ThetaProfile& theta, double r0, double r1) {
  return 4.0 * integrate_gl([&](double r) { return theta(r) * (1.0 - r * r) * r; }, r0, r1, 64);
}

PathQuasiMorphismOracle calabi_annulus_oracle(const SphereMesh& mesh, double r0, double r1,
                                              const BundleGrid& grid,
                                              std::vector<int> base_mask) {
  if (!(0.0 <= r0 && r0 < r1 && r1 < 1.0))
    throw std::invalid_argument("calabi_annulus_oracle: need 0 <= r0 < r1 < 1");
  PathQuasiMorphismOracle oracle;
  oracle.name = "calabi-annulus";
  const SphereMesh* m = &mesh;
  if (base_mask.empty())
    for (int v = 0; v < mesh.vertex_count(); ++v) base_mask.push_back(v);
  double mask_weight = 0.0;
  for (int v : base_mask) mask_weight += mesh.vertex_weights[v];
  // Annulus weight of omega^2 against a trivial radial profile.
  double annulus_volume =
      4.0 * integrate_gl([&](double r) { return (1.0 - r * r) * r; }, r0, r1, 64) * mask_weight;
  oracle.stability_B = 1.0 - annulus_volume;

  oracle.eval_bundle = [m, r0, r1, grid, base_mask](const BundlePath& P) {
    int steps = 10;
    if (P.theta && P.base) {
      // Structured path: the radial factor separates.
      double radial = annulus_radial_weight(*P.theta, r0, r1);
      double base_part = masked_time_integral(
          *m, base_mask, [&P](const Vec3& p, double t) { return P.base->value(p, t); },
          std::max(P.base->steps, steps));
      return radial * base_part;
    }
    std::vector<char> in_mask(m->vertex_count(), 0);
    for (int v : base_mask) in_mask[v] = 1;
    auto masked = [&](const ChartPoint& cp, double t) {
      double r = cp.r();
      if (r < r0 || r > r1) return 0.0;
      std::array<int, 3> corners;
      Vec3 bary;
      m->locate(bundle::atlas::base_point(cp), corners, bary);
      double inside = bary[0] * in_mask[corners[0]] + bary[1] * in_mask[corners[1]] +
                      bary[2] * in_mask[corners[2]];
      return inside > 0.5 ? P.value(cp, t) : 0.0;
    };
    // Quadrature in r restricted to the annulus avoids the indicator jump.
    BundleGrid sub = grid;
    double integral = 0.0;
    for (int i = 0; i <= steps; ++i) {
      double t = static_cast<double>(i) / steps;
      double slice = bundle::bundle_integral(
          [&](const ChartPoint& cp) {
            double r = cp.r();
            if (r < r0 || r > r1) return 0.0;
            return masked(cp, t);
          },
          sub);
      integral += (i == 0 || i == steps ? 0.5 : 1.0) * slice / steps;
    }
    return integral;
  };
  oracle.defect_bound = 0.0;
  return oracle;
}

double qs_from_qm(const PathQuasiMorphismOracle& mu, const ScalarField& H, double vol, int steps) {
  if (!mu.stability_B)
    throw std::invalid_argument("qs_from_qm: oracle carries no stability constant");
  if (!mu.eval_base) throw std::invalid_argument("qs_from_qm: oracle has no base evaluator");
  double total = geom::integrate(H) * vol;
  ScalarField Hn = H.shifted(-geom::integrate(H));
  double mu_val = mu.eval_base(HamiltonianPath::constant(Hn, steps));
  return (total - mu_val) / vol;
}

ReducedQuasiMorphism reduce_quasi_morphism(const PathQuasiMorphismOracle& mu, double eps,
                                           const HamiltonianPath& F, double normalizer) {
  if (!(normalizer > 0.0))
    throw std::invalid_argument("reduce_quasi_morphism: normalizer must be positive");
  if (!mu.eval_bundle)
    throw std::invalid_argument("reduce_quasi_morphism: oracle has no bundle evaluator");
  int steps = std::max(F.steps, 1);
  for (int i = 0; i <= steps; ++i) {
    double mean = F.slice_mean(i);
    if (std::abs(mean) > 1e-10)
      throw std::invalid_argument("reduce_quasi_morphism: slice " + std::to_string(i) +
                                  " has mean " + std::to_string(mean));
  }
  ThetaProfile theta = ThetaProfile::interpolating(eps);
  ReducedQuasiMorphism out;
  out.mu_hat = mu.eval_bundle(bundle::lift_path(F, theta));
  out.mu_bar = out.mu_hat / normalizer;
  return out;
}

ScaleCheck scale_identity_check(const PathQuasiMorphismOracle& mu,
                                const std::function<double(double)>& lambda, const ScalarField& H,
                                int steps) {
  if (!mu.eval_base)
    throw std::invalid_argument("scale_identity_check: oracle has no base evaluator");
  ScaleCheck check;
  check.lhs = mu.eval_base(HamiltonianPath::time_scaled(H, lambda, steps));
  double lambda_integral = 0.0;
  for (int i = 0; i <= steps; ++i)
    lambda_integral += (i == 0 || i == steps ? 0.5 : 1.0) *
                       lambda(static_cast<double>(i) / steps) / steps;
  check.rhs = lambda_integral * mu.eval_base(HamiltonianPath::constant(H, steps));
  check.residual = std::abs(check.lhs - check.rhs) /
                   std::max(1.0, std::max(std::abs(check.lhs), std::abs(check.rhs)));
  return check;
}

LiftDisplacerResult lift_displacer(const HamiltonianPath& G, const Vec3& cap_center,
                                   double cap_area, double eps, double a, double dt, int samples) {
  if (!(a < 1.0 - eps))
    throw std::invalid_argument("lift_displacer: need a < 1 - eps");
  geom::DisplacementCertificate base =
      geom::verify_cap_displacement(G, cap_center, cap_area, samples, dt);
  if (!base.disjoint)
    throw std::invalid_argument("lift_displacer: the base isotopy does not displace the cap");

  ThetaProfile theta = ThetaProfile::interpolating(eps);
  BundlePath lifted = bundle::lift_path(G, theta);

  double radius = geom::cap_angular_radius(cap_area);
  Vec3 c = cap_center.normalized();
  Vec3 ref = std::abs(c.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  Vec3 e1 = (ref - ref.dot(c) * c).normalized();
  Vec3 e2 = c.cross(e1);

  LiftDisplacerResult result;
  result.min_separation = 1e300;
  for (int ring = 1; ring <= 3; ++ring) {
    double rho = radius * ring / 3.0;
    for (int j = 0; j < samples; ++j) {
      double ang = 2.0 * kPi * j / samples;
      Vec3 p = std::cos(rho) * c + std::sin(rho) * (std::cos(ang) * e1 + std::sin(ang) * e2);
      for (double rr : {a / 2.0, a}) {
        ChartPoint seed;
        seed.chart = p.z() >= 0.0 ? 0 : 1;
        bundle::atlas::base_coords(seed.chart, p, seed.u, seed.v);
        seed.a = rr;
        seed.b = 0.0;
        ChartPoint image = bundle::bundle_flow_point(lifted, seed, 0.0, 1.0, dt);
        ++result.samples;
        Vec3 projected = bundle::atlas::base_point(image);
        double angle = std::acos(std::clamp(c.dot(projected), -1.0, 1.0));
        result.min_separation = std::min(result.min_separation, angle - radius);
      }
    }
  }
  result.certified = result.min_separation > 0.0;
  return result;
}

QuasiStateOracle make_quasi_state_oracle(const std::string& spec, const SphereMesh& base,
                                         const BundleGrid& grid) {
  if (spec == "median") return zero_section_median_oracle(base);
  if (spec == "mean") return mean_oracle(grid);
  if (spec.rfind("point:", 0) == 0) {
    ChartPoint p;
    p.chart = 0;
    p.a = p.b = 0.0;
    int chart = 0;
    int got = std::sscanf(spec.c_str() + 6, "%lf,%lf,%d", &p.u, &p.v, &chart);
    if (got < 2) throw std::invalid_argument("oracle spec '" + spec + "': expected point:u,v[,chart]");
    if (got == 3) {
      if (chart != 0 && chart != 1)
        throw std::invalid_argument("oracle spec '" + spec + "': chart must be 0 or 1");
      p.chart = chart;
    }
    return point_evaluation_oracle(p);
  }
  throw std::invalid_argument("unknown quasi-state oracle '" + spec + "'");
}

PathQuasiMorphismOracle make_path_oracle(const std::string& spec, const SphereMesh& base,
                                         const BundleGrid& grid) {
  if (spec == "zero") return zero_path_oracle();
  if (spec.rfind("calabi-annulus:", 0) == 0) {
    double r0 = 0, r1 = 0;
    if (std::sscanf(spec.c_str() + 15, "%lf,%lf", &r0, &r1) != 2)
      throw std::invalid_argument("oracle spec '" + spec + "': expected calabi-annulus:r0,r1");
    return calabi_annulus_oracle(base, r0, r1, grid);
  }
  if (spec.rfind("calabi:", 0) == 0) {
    double area = 0;
    if (std::sscanf(spec.c_str() + 7, "%lf", &area) != 1 || !(area > 0) || !(area < 1))
      throw std::invalid_argument("oracle spec '" + spec + "': expected calabi:area in (0,1)");
    return calabi_mask_oracle(base, base.cap_vertices(Vec3(0, 0, 1), area));
  }
  throw std::invalid_argument("unknown path quasi-morphism oracle '" + spec + "'");
}

}  // namespace qslab::reduction
