#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qslab/expr.hpp"
#include "qslab/numerics.hpp"
#include "qslab/reduction.hpp"
#include "qslab/reeb.hpp"

using namespace qslab;
using namespace qslab::geom;
using namespace qslab::bundle;
using namespace qslab::reduction;

namespace {

ScalarField random_field(const SphereMesh& mesh, Rng& rng) {
  double c[6];
  for (double& x : c) x = rng.uniform(-1, 1);
  return ScalarField::sample(mesh, [=](const Vec3& p) {
    return c[0] + c[1] * p.x() + c[2] * p.y() + c[3] * p.z() + c[4] * p.x() * p.z() +
           c[5] * (p.y() * p.y() - 1.0 / 3.0);
  });
}

}  // namespace

TEST_CASE("point-evaluation reduction is evaluation at the projected point") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  ChartPoint p;  // zero-section point over some base location
  p.chart = 0;
  p.u = 0.3;
  p.v = -0.2;
  p.a = p.b = 0.0;
  QuasiStateOracle zeta = point_evaluation_oracle(p);
  Vec3 base = atlas::base_point(p);
  Rng rng(5);
  for (double eps : {0.1, 0.2, 0.3}) {
    ThetaProfile theta = ThetaProfile::interpolating(eps);
    for (int i = 0; i < 20; ++i) {
      ScalarField F = random_field(mesh, rng);
      double reduced = reduce_quasi_state(zeta, theta, F);
      CHECK(std::abs(reduced - F.eval(base)) <= 1e-10);
    }
    ScalarField one = ScalarField::constant(mesh, 1.0);
    CHECK(reduce_quasi_state(zeta, theta, one) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("reduction preserves order for a monotone oracle") {
  SphereMesh mesh = SphereMesh::icosphere(2);
  ChartPoint p{0, -0.4, 0.1, 0.2, 0.1};
  QuasiStateOracle zeta = point_evaluation_oracle(p);
  ThetaProfile theta = ThetaProfile::interpolating(0.2);
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    ScalarField F = random_field(mesh, rng);
    ScalarField G = random_field(mesh, rng);
    std::vector<double> upper(F.values);
    for (int v = 0; v < mesh.vertex_count(); ++v) upper[v] += std::abs(G.values[v]);
    ScalarField K = ScalarField::from_values(mesh, std::move(upper));
    // interpolation-free comparison: evaluate on vertices only
    CHECK(reduce_quasi_state(zeta, theta, F) <=
          reduce_quasi_state(zeta, theta, K) + 1e-12);
  }
}

TEST_CASE("violated positivity hypothesis raises") {
  SphereMesh mesh = SphereMesh::icosphere(1);
  // theta vanishes on the outer plateau, so evaluation there gives zeta(theta) = 0.
  ChartPoint outer = ChartPoint::from_polar(0, 0.1, 0.1, 0.93, 0.0);
  QuasiStateOracle zeta = point_evaluation_oracle(outer);
  ThetaProfile theta = ThetaProfile::interpolating(0.2);
  ScalarField F = ScalarField::constant(mesh, 1.0);
  CHECK_THROWS_AS(reduce_quasi_state(zeta, theta, F), HypothesisError);
}

TEST_CASE("zero-section median oracle reduces to the median quasi-state") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  QuasiStateOracle zeta = zero_section_median_oracle(mesh);
  ThetaProfile theta = ThetaProfile::interpolating(0.15);
  CHECK(zeta_of_theta(zeta, theta, mesh) == doctest::Approx(1.0));
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    ScalarField F = random_field(mesh, rng);
    CHECK(reduce_quasi_state(zeta, theta, F) == doctest::Approx(reeb::zeta_med(F)).epsilon(1e-14));
  }
}

TEST_CASE("mean oracle is normalized") {
  BundleGrid grid{24, 24, 12, 4, 2.0, 0.999};
  SphereMesh mesh = SphereMesh::icosphere(2);
  QuasiStateOracle zeta = mean_oracle(grid);
  ThetaProfile theta = ThetaProfile::interpolating(0.2);
  ScalarField one = ScalarField::constant(mesh, 1.0);
  BundleField lifted_one{[](const ChartPoint&) { return 1.0; }, std::nullopt, std::nullopt};
  CHECK(zeta(lifted_one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reduce_quasi_state(zeta, theta, one) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("qs_from_qm basics") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  PathQuasiMorphismOracle zero = zero_path_oracle();
  Rng rng(10);
  for (int i = 0; i < 10; ++i) {
    ScalarField H = random_field(mesh, rng);
    CHECK(qs_from_qm(zero, H, 1.0, 8) == doctest::Approx(integrate(H)).epsilon(1e-12));
  }
  ScalarField c = ScalarField::constant(mesh, -1.7);
  std::vector<int> mask = mesh.cap_vertices(Vec3(0, 0, -1), 0.2);
  PathQuasiMorphismOracle cal = calabi_mask_oracle(mesh, mask);
  CHECK(qs_from_qm(cal, c, 1.0, 8) == doctest::Approx(-1.7).epsilon(1e-12));

  PathQuasiMorphismOracle no_b = cal;
  no_b.stability_B.reset();
  CHECK_THROWS_AS(qs_from_qm(no_b, c, 1.0, 8), std::invalid_argument);
}

TEST_CASE("qs_from_qm with a mask disjoint from a zero-mean support") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  std::vector<int> mask = mesh.cap_vertices(Vec3(0, 0, -1), 0.2);
  PathQuasiMorphismOracle cal = calabi_mask_oracle(mesh, mask);
  // Zero-mean dipole supported near the north pole: both terms vanish.
  double radius = cap_angular_radius(0.15);
  Vec3 c1 = Vec3(0.2, 0, 1).normalized(), c2 = Vec3(-0.2, 0, 1).normalized();
  auto bump = [&](const Vec3& p, const Vec3& c) {
    double a = std::acos(std::clamp(p.dot(c), -1.0, 1.0));
    return a < radius ? 1.0 - smootherstep(a / radius) : 0.0;
  };
  ScalarField H = ScalarField::sample(mesh, [&](const Vec3& p) {
    return bump(p, c1) - bump(p, c2);
  });
  H = H.shifted(-integrate(H));  // exact zero mesh mean
  CHECK(qs_from_qm(cal, H, 1.0, 8) == doctest::Approx(integrate(H)).epsilon(1e-10));
}

TEST_CASE("round trip: the quasi-morphism induced by the median recovers it") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  PathQuasiMorphismOracle mu;
  mu.name = "median-difference";
  const SphereMesh* m = &mesh;
  mu.eval_base = [m](const HamiltonianPath& F) {
    int steps = std::max(F.steps, 8);
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
      double t = static_cast<double>(i) / steps;
      ScalarField slice = F.slice(t);
      acc += (i == 0 || i == steps ? 0.5 : 1.0) *
             (integrate(slice) - reeb::zeta_med(slice)) / steps;
    }
    return acc;
  };
  mu.stability_B = 1.0;
  Rng rng(11);
  for (int i = 0; i < 5; ++i) {
    ScalarField H = random_field(mesh, rng);
    CHECK(qs_from_qm(mu, H, 1.0, 8) == doctest::Approx(reeb::zeta_med(H)).epsilon(1e-10));
  }
}

TEST_CASE("reduced quasi-morphism from the annulus fixture is linear") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  BundleGrid grid{20, 20, 10, 6, 2.0, 0.999};
  std::vector<int> cap = mesh.cap_vertices(Vec3(0, 0, 1), 0.35);
  PathQuasiMorphismOracle mu = calabi_annulus_oracle(mesh, 0.2, 0.6, grid, cap);

  double eps = 0.2;
  ThetaProfile theta = ThetaProfile::interpolating(eps);
  Rng rng(12);
  ScalarField A = random_field(mesh, rng);
  ScalarField B = random_field(mesh, rng);
  ScalarField An = A.shifted(-integrate(A));
  ScalarField Bn = B.shifted(-integrate(B));
  ScalarField Sn = (A + B).shifted(-integrate(A + B));

  auto reduce = [&](const ScalarField& F) {
    return reduce_quasi_morphism(mu, eps, HamiltonianPath::constant(F, 8), 1.0).mu_hat;
  };
  double ra = reduce(An), rb = reduce(Bn), rs = reduce(Sn);
  CHECK(rs == doctest::Approx(ra + rb).epsilon(1e-9));

  // Cross-check the separated quadrature against the raw chart quadrature.
  BundlePath raw;
  raw.eval = [&theta, An](const ChartPoint& p, double t) {
    (void)t;
    return theta(p.r()) * An.eval(atlas::base_point(p));
  };
  double via_grid = mu.eval_bundle(raw);
  CHECK(via_grid == doctest::Approx(ra).epsilon(5e-2));

  // Zero path reduces to zero; non-normalized input is rejected.
  CHECK(reduce(ScalarField::constant(mesh, 0.0)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(
      reduce_quasi_morphism(mu, eps, HamiltonianPath::constant(A.shifted(1.0), 8), 1.0),
      std::invalid_argument);
}

TEST_CASE("annulus fixture has vanishing sampled defect on commuting products") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  BundleGrid grid{16, 16, 8, 4, 2.0, 0.999};
  PathQuasiMorphismOracle mu = calabi_annulus_oracle(mesh, 0.1, 0.7, grid);
  double eps = 0.2;
  ThetaProfile theta = ThetaProfile::interpolating(eps);
  ZonalFlow zf{[](double z) { return 0.4 * z * z; }, [](double z) { return 0.8 * z; }};
  Rng rng(13);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ScalarField G = random_field(mesh, rng);
    HamiltonianPath F = zf.path(mesh, 8).normalized();
    HamiltonianPath Gn = HamiltonianPath::constant(G.shifted(-integrate(G)), 8);
    HamiltonianPath FG;
    FG.mesh = &mesh;
    FG.steps = 8;
    auto fF = F, fG = Gn;
    FG.smooth = [fF, fG, zf](const Vec3& x, double t) {
      return fF.value(x, t) + fG.value(zf.inverse(x, t), t);
    };
    double a = mu.eval_bundle(lift_path(F, theta));
    double b = mu.eval_bundle(lift_path(Gn, theta));
    double ab = mu.eval_bundle(lift_path(FG, theta));
    worst = std::max(worst, std::abs(ab - a - b));
  }
  CHECK(worst <= 1e-2);
}

TEST_CASE("scale identity for the Calabi fixture") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  std::vector<int> mask = mesh.cap_vertices(Vec3(0, 1, 0), 0.25);
  PathQuasiMorphismOracle cal = calabi_mask_oracle(mesh, mask);
  ScalarField H = ScalarField::sample(mesh, expr::compile("x + 0.3*z^2"));
  H = H.shifted(-integrate(H));

  ScaleCheck c1 = scale_identity_check(cal, [](double) { return 1.0; }, H, 20);
  CHECK(c1.residual <= 1e-12);
  ScaleCheck c2 = scale_identity_check(cal, [](double t) { return 2.0 * t; }, H, 20);
  CHECK(c2.residual <= 1e-6);
  ScaleCheck c3 =
      scale_identity_check(cal, [](double t) { return std::sin(2.0 * kPi * t); }, H, 20);
  CHECK(std::abs(c3.lhs) <= 1e-6);
  CHECK(std::abs(c3.rhs) <= 1e-6);
}

TEST_CASE("lifted displacer clears the truncated preimage") {
  SphereMesh mesh = SphereMesh::icosphere(2);
  Vec3 center = Vec3(0.1, -0.2, 0.97).normalized();
  HamiltonianPath G = displacing_rotation(mesh, center, 0.2, 8);
  LiftDisplacerResult r = lift_displacer(G, center, 0.2, 0.2, 0.5, 1e-2, 16);
  CHECK(r.certified);
  CHECK(r.min_separation > 0.0);
  // The lifted flow projects onto the base rotation, so the clearance
  // matches the base certificate.
  CHECK(r.min_separation == doctest::Approx(kPi - 2 * cap_angular_radius(0.2)).epsilon(0.05));

  CHECK_THROWS_AS(lift_displacer(G, center, 0.2, 0.2, 0.9, 1e-2, 8), std::invalid_argument);

  // Vacuously small region.
  LiftDisplacerResult tiny = lift_displacer(G, center, 1e-6, 0.2, 0.5, 1e-2, 4);
  CHECK(tiny.certified);
}

TEST_CASE("vanishing descends through the reduction for certified supports") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  QuasiStateOracle zeta = zero_section_median_oracle(mesh);
  double eps = 0.2;
  ThetaProfile theta = ThetaProfile::interpolating(eps);
  Vec3 center = Vec3(0.3, 0.1, 0.95).normalized();
  double area = 0.25;

  // Certify that the support is displaceable upstairs.
  HamiltonianPath G = displacing_rotation(mesh, center, area, 8);
  LiftDisplacerResult cert = lift_displacer(G, center, area, eps, 0.6, 1e-2, 12);
  CHECK(cert.certified);

  // A field supported in the certified cap reduces to zero.
  double radius = cap_angular_radius(area);
  ScalarField H = ScalarField::sample(mesh, [&](const Vec3& p) {
    double a = std::acos(std::clamp(p.dot(center), -1.0, 1.0));
    return a < radius ? 0.8 * (1.0 - smootherstep(a / radius)) : 0.0;
  });
  CHECK(reduce_quasi_state(zeta, theta, H) == 0.0);
}

TEST_CASE("master inequality constant transfers with the profile factor") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  QuasiStateOracle zeta = zero_section_median_oracle(mesh);
  ThetaProfile theta = ThetaProfile::interpolating(0.2);
  double denominator = zeta_of_theta(zeta, theta, mesh);

  // max_r theta / sqrt(1 - r^2) over the support.
  double factor = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    double r = i / 2000.0 * 0.999;
    factor = std::max(factor, theta(r) / std::sqrt(1.0 - r * r));
  }

  BundleGrid grid{10, 10, 6, 1, 1.3, 0.9};
  auto pts = grid.sample_points(0.9);
  Rng rng(21);
  double up_ratio = 0.0, down_ratio = 0.0;
  for (int i = 0; i < 6; ++i) {
    ScalarField H = random_field(mesh, rng);
    ScalarField K = random_field(mesh, rng);
    double pi_up = std::abs(zeta(lift(H + K, theta)) - zeta(lift(H, theta)) -
                            zeta(lift(K, theta)));
    double sup_up = 0.0;
    BundleField th = lift(H, theta), tk = lift(K, theta);
    for (const ChartPoint& p : pts) {
      double hf = safe_fiber_step(p.r(), grid.fiber_step(0.9), theta);
      sup_up = std::max(sup_up, std::abs(bracket_at(th, tk, p, grid.base_step(), hf)));
    }
    double sup_down = poisson_bracket(H, K).max_abs();
    double pi_down =
        std::abs(reeb::zeta_med(H + K) - reeb::zeta_med(H) - reeb::zeta_med(K));
    up_ratio = std::max(up_ratio, pi_up / std::max(std::sqrt(sup_up), 1e-9));
    down_ratio = std::max(down_ratio, pi_down / std::max(std::sqrt(sup_down), 1e-9));
  }
  CHECK(down_ratio <= (up_ratio / denominator) * factor * 1.3 + 1e-9);
}

TEST_CASE("qs_from_qm is monotone for the stable Calabi fixture") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  std::vector<int> mask = mesh.cap_vertices(Vec3(0.4, 0.1, 0.9).normalized(), 0.3);
  PathQuasiMorphismOracle cal = calabi_mask_oracle(mesh, mask);
  REQUIRE(cal.stability_B.has_value());
  CHECK(*cal.stability_B <= 1.0);
  Rng rng(71);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    ScalarField H = random_field(mesh, rng);
    ScalarField G = random_field(mesh, rng);
    std::vector<double> upper(H.values);
    for (int v = 0; v < mesh.vertex_count(); ++v) upper[v] += std::abs(G.values[v]);
    ScalarField K = ScalarField::from_values(mesh, std::move(upper));
    if (qs_from_qm(cal, H, 1.0, 6) > qs_from_qm(cal, K, 1.0, 6) + 1e-12) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("the stability inequality holds on sampled normalized pairs") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  std::vector<int> mask = mesh.cap_vertices(Vec3(0, 0, 1), 0.3);
  PathQuasiMorphismOracle cal = calabi_mask_oracle(mesh, mask);
  double B = *cal.stability_B;
  Rng rng(72);
  for (int i = 0; i < 50; ++i) {
    ScalarField F = random_field(mesh, rng);
    ScalarField G = random_field(mesh, rng);
    F = F.shifted(-integrate(F));
    G = G.shifted(-integrate(G));
    ScalarField diff = F - G;
    double lo = *std::min_element(diff.values.begin(), diff.values.end());
    double hi = *std::max_element(diff.values.begin(), diff.values.end());
    double gap = (cal.eval_base(HamiltonianPath::constant(G, 6)) -
                  cal.eval_base(HamiltonianPath::constant(F, 6))) /
                 B;
    CHECK(lo <= gap + 1e-12);
    CHECK(gap <= hi + 1e-12);
  }
}

TEST_CASE("oracle registry resolves the documented names") {
  SphereMesh mesh = SphereMesh::icosphere(2);
  BundleGrid grid{16, 16, 8, 2, 2.0, 0.999};

  QuasiStateOracle median = make_quasi_state_oracle("median", mesh, grid);
  CHECK(median.flags.vanishing);
  QuasiStateOracle point = make_quasi_state_oracle("point:0.2,-0.4", mesh, grid);
  ThetaProfile theta = ThetaProfile::interpolating(0.2);
  ScalarField F = ScalarField::sample(mesh, expr::compile("x + z"));
  ChartPoint q{0, 0.2, -0.4, 0.0, 0.0};
  CHECK(reduce_quasi_state(point, theta, F) ==
        doctest::Approx(F.eval(atlas::base_point(q))).epsilon(1e-12));
  QuasiStateOracle point1 = make_quasi_state_oracle("point:0.1,0.3,1", mesh, grid);
  CHECK(point1.name.rfind("point", 0) == 0);
  CHECK_NOTHROW(make_quasi_state_oracle("mean", mesh, grid));
  CHECK_THROWS_AS(make_quasi_state_oracle("bogus", mesh, grid), std::invalid_argument);
  CHECK_THROWS_AS(make_quasi_state_oracle("point:1", mesh, grid), std::invalid_argument);

  PathQuasiMorphismOracle zero = make_path_oracle("zero", mesh, grid);
  CHECK(zero.eval_base(HamiltonianPath::constant(F, 4)) == 0.0);
  PathQuasiMorphismOracle cal = make_path_oracle("calabi:0.3", mesh, grid);
  CHECK(cal.eval_base);
  PathQuasiMorphismOracle ann = make_path_oracle("calabi-annulus:0.2,0.6", mesh, grid);
  CHECK(ann.eval_bundle);
  CHECK_THROWS_AS(make_path_oracle("calabi:2.0", mesh, grid), std::invalid_argument);
  CHECK_THROWS_AS(make_path_oracle("wat", mesh, grid), std::invalid_argument);
}
