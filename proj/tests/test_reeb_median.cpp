#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qslab/expr.hpp"
#include "qslab/flow.hpp"
#include "qslab/numerics.hpp"
#include "qslab/reeb.hpp"

using namespace qslab;
using namespace qslab::geom;
using namespace qslab::reeb;

namespace {

ScalarField random_smooth_field(const SphereMesh& mesh, Rng& rng) {
  double c[9];
  for (double& x : c) x = rng.uniform(-1, 1);
  auto f = [=](const Vec3& p) {
    return c[0] + c[1] * p.x() + c[2] * p.y() + c[3] * p.z() + c[4] * p.x() * p.y() +
           c[5] * p.y() * p.z() + c[6] * p.x() * p.z() + c[7] * (p.z() * p.z() - 1.0 / 3.0) +
           c[8] * (p.x() * p.x() - p.y() * p.y());
  };
  return ScalarField::sample(mesh, f);
}

ScalarField cap_bump(const SphereMesh& mesh, const Vec3& center, double area, double height) {
  double radius = cap_angular_radius(area);
  Vec3 c = center.normalized();
  return ScalarField::sample(mesh, [=](const Vec3& p) {
    double a = std::acos(std::clamp(p.dot(c), -1.0, 1.0));
    double s = a / radius;
    return s < 1.0 ? height * (1.0 - smootherstep(s)) : 0.0;
  });
}

}  // namespace

TEST_CASE("height function gives a path graph of full measure") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  ScalarField z = ScalarField::sample(mesh, [](const Vec3& p) { return p.z(); });
  ReebGraph g = build_reeb(z);
  CHECK(g.is_tree());
  CHECK(g.nodes.size() == 2);
  CHECK(g.edges.size() == 1);
  CHECK(g.leaf_count() == 2);
  CHECK(g.total_measure() == doctest::Approx(1.0).epsilon(1e-12));
  int assigned = 0;
  for (int e : g.vertex_edge)
    if (e >= 0) ++assigned;
  CHECK(assigned == mesh.vertex_count());
}

TEST_CASE("two bumps over a gently sloped background: three leaves, one merge node") {
  // An exactly flat background plus index tie-breaking manufactures plateau
  // criticality; the slight tilt restores the ideal Morse picture.
  SphereMesh mesh = SphereMesh::icosphere(4);
  ScalarField b1 = cap_bump(mesh, Vec3(0, 0, 1), 0.08, 1.0);
  ScalarField b2 = cap_bump(mesh, Vec3(1, 0, 0), 0.08, 2.0);
  ScalarField tilt = ScalarField::sample(mesh, [](const Vec3& p) { return 0.005 * p.z(); });
  ReebGraph g = build_reeb(b1 + b2 + tilt);
  CHECK(g.is_tree());
  CHECK(g.leaf_count() == 3);
  CHECK(g.nodes.size() == 4);  // three leaves plus the merge
  CHECK(g.total_measure() == doctest::Approx(1.0).epsilon(1e-12));

  // The exactly flat background still yields a valid tree, only with extra
  // tie-broken plateau nodes.
  ReebGraph flat = build_reeb(b1 + b2);
  CHECK(flat.is_tree());
  CHECK(flat.total_measure() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant field under index tie-breaking yields a path graph") {
  SphereMesh mesh = SphereMesh::icosphere(2);
  ScalarField c = ScalarField::constant(mesh, 3.0);
  ReebGraph g = build_reeb(c);
  CHECK(g.is_tree());
  CHECK(g.leaf_count() == 2);
  CHECK(g.total_measure() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zeta_med(c) == doctest::Approx(3.0));
}

TEST_CASE("random fields build valid trees") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    ScalarField F = random_smooth_field(mesh, rng);
    ReebGraph g = build_reeb(F);
    CHECK(g.is_tree());
    CHECK(g.total_measure() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.leaf_count() >= 2);
    for (const ReebEdge& e : g.edges) {
      CHECK(e.measure > 0.0);
      CHECK(g.nodes[e.lo].level <= g.nodes[e.hi].level);
      for (const auto& [lvl, w] : e.atoms) {
        CHECK(w > 0.0);
        CHECK(lvl >= g.nodes[e.lo].level);
        CHECK(lvl <= g.nodes[e.hi].level);
      }
    }
  }
}

TEST_CASE("median of the height field sits near level zero") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  ScalarField z = ScalarField::sample(mesh, [](const Vec3& p) { return p.z(); });
  MedianPoint mp = median(build_reeb(z));
  CHECK(std::abs(mp.level) <= 1e-2);
  for (double c : mp.component_measures) CHECK(c <= 0.5 + 1e-12);
}

TEST_CASE("three-leaf star balances at the merge node") {
  // merge node at level 0.5; three leaf edges with measures 0.2 / 0.3 / 0.5
  ReebGraph g;
  g.nodes.push_back({0, 0.5});  // merge
  g.nodes.push_back({1, 0.0});
  g.nodes.push_back({2, 0.1});
  g.nodes.push_back({3, 1.0});
  auto edge = [](int lo, int hi, std::vector<std::pair<double, double>> atoms) {
    ReebEdge e;
    e.lo = lo;
    e.hi = hi;
    e.atoms = std::move(atoms);
    for (auto& [l, w] : e.atoms) e.measure += w;
    return e;
  };
  g.edges.push_back(edge(1, 0, {{0.0, 0.05}, {0.2, 0.1}, {0.4, 0.05}}));  // 0.2
  g.edges.push_back(edge(2, 0, {{0.1, 0.1}, {0.3, 0.2}}));                // 0.3
  g.edges.push_back(edge(0, 3, {{0.6, 0.2}, {0.8, 0.2}, {1.0, 0.1}}));    // 0.5
  MedianPoint mp = median(g);
  CHECK(mp.node == 0);
  CHECK(mp.level == doctest::Approx(0.5));

  // Brute-force scan over interior candidates: none improves on the node's
  // worst complementary component.
  double node_worst = 0.0;
  for (double m : mp.component_measures) node_worst = std::max(node_worst, m);
  for (const ReebEdge& e : g.edges) {
    double out_lo = (e.lo == 0) ? g.total_measure() - e.measure : 0.0;
    double out_hi = (e.hi == 0) ? g.total_measure() - e.measure : 0.0;
    double below = out_lo;
    for (size_t k = 0; k < e.atoms.size(); ++k) {
      double above = out_hi;
      for (size_t j = k + 1; j < e.atoms.size(); ++j) above += e.atoms[j].second;
      double worst = std::max(below, above);
      below += e.atoms[k].second;
      CHECK(worst >= node_worst - 1e-12);
    }
  }
}

TEST_CASE("single edge of uniform atoms balances at the measure midpoint") {
  ReebGraph g;
  g.nodes.push_back({0, 0.0});
  g.nodes.push_back({1, 1.0});
  ReebEdge e;
  e.lo = 0;
  e.hi = 1;
  for (int i = 0; i < 10; ++i) e.atoms.push_back({(i + 0.5) / 10.0, 0.1});
  e.measure = 1.0;
  g.edges.push_back(e);
  MedianPoint mp = median(g);
  CHECK(mp.edge == 0);
  // cumulative reaches 1/2 exactly after the fifth atom; the tie resolves
  // toward the upper side
  CHECK(mp.tie);
  CHECK(mp.level == doctest::Approx(0.55));
}

TEST_CASE("zeta_med normalization and shift") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  CHECK(zeta_med(ScalarField::constant(mesh, 1.0)) == doctest::Approx(1.0));
  CHECK(zeta_med(ScalarField::constant(mesh, -2.5)) == doctest::Approx(-2.5));
  Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    ScalarField F = random_smooth_field(mesh, rng);
    double c = rng.uniform(-2, 2);
    CHECK(zeta_med(F.shifted(c)) == doctest::Approx(zeta_med(F) + c).epsilon(1e-14));
  }
}

TEST_CASE("zeta_med of the height field is near zero, and vanishes on caps") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  ScalarField z = ScalarField::sample(mesh, [](const Vec3& p) { return p.z(); });
  CHECK(std::abs(zeta_med(z)) <= 1e-2);

  // Support in a cap of area 0.3, both signs inside.
  ScalarField bump = cap_bump(mesh, Vec3(0, 0, 1), 0.15, 1.0) +
                     cap_bump(mesh, Vec3(0.45, 0, 0.89), 0.1, -0.7);
  CHECK(zeta_med(bump) == 0.0);
}

TEST_CASE("zeta_med is monotone on ordered pairs") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  Rng rng(55);
  for (int i = 0; i < 50; ++i) {
    ScalarField F = random_smooth_field(mesh, rng);
    ScalarField G = random_smooth_field(mesh, rng);
    std::vector<double> upper(F.values);
    for (int v = 0; v < mesh.vertex_count(); ++v) upper[v] += std::abs(G.values[v]);
    ScalarField K = ScalarField::from_values(mesh, std::move(upper));
    CHECK(zeta_med(F) <= zeta_med(K) + 1e-15);
  }
}

TEST_CASE("zeta_med is Lipschitz in the sup norm") {
  SphereMesh mesh = SphereMesh::icosphere(3);
  Rng rng(56);
  for (int i = 0; i < 50; ++i) {
    ScalarField F = random_smooth_field(mesh, rng);
    ScalarField G = random_smooth_field(mesh, rng);
    double dist = (F - G).max_abs();
    CHECK(std::abs(zeta_med(F) - zeta_med(G)) <= dist + 1e-14);
  }
}

TEST_CASE("quasi-linearity against hand-computed medians") {
  SphereMesh mesh = SphereMesh::icosphere(5);
  auto F = [](const Vec3& p) { return p.z() - 0.5; };
  ScalarField gF = ScalarField::sample(mesh, [&](const Vec3& p) { return F(p); });
  ScalarField hF = ScalarField::sample(mesh, [&](const Vec3& p) { return F(p) * F(p); });
  // The measure of {z < c} is (c+1)/2, which pins the medians in closed form.
  CHECK(zeta_med(gF) == doctest::Approx(-0.5).epsilon(2e-2));
  CHECK(zeta_med(hF) == doctest::Approx(0.25).epsilon(2e-2));
  CHECK(zeta_med(gF + hF) == doctest::Approx(-0.25).epsilon(2e-2));
  double residual = std::abs(zeta_med(gF + hF) - zeta_med(gF) - zeta_med(hF));
  CHECK(residual <= 1e-2);
}

TEST_CASE("Aarnes quasi-linearity on random composite fields") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    ScalarField F = random_smooth_field(mesh, rng);
    double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
    auto g = [a](double s) { return a * s + 0.3 * s * s; };
    auto h = [b](double s) { return b * s - 0.2 * s * s * s; };
    std::vector<double> gv(mesh.vertex_count()), hv(mesh.vertex_count()),
        sv(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      gv[v] = g(F.values[v]);
      hv[v] = h(F.values[v]);
      sv[v] = gv[v] + hv[v];
    }
    double zg = zeta_med(ScalarField::from_values(mesh, gv));
    double zh = zeta_med(ScalarField::from_values(mesh, hv));
    double zs = zeta_med(ScalarField::from_values(mesh, sv));
    CHECK(std::abs(zs - zg - zh) <= 1e-2);
  }
}

TEST_CASE("zeta_med is flow invariant within mesh tolerance") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  auto f = expr::compile("x*z + 0.4*y - 0.1");
  ScalarField H = ScalarField::sample(mesh, f);
  HamiltonianPath F = HamiltonianPath::constant(
      ScalarField::sample(mesh, expr::compile("0.3*(z^2 + x)")), 10);
  ScalarField moved = ScalarField::sample(mesh, [&](const Vec3& p) {
    return f(flow_point(F, p, 0.0, 1.0, 2e-3));
  });
  CHECK(std::abs(zeta_med(moved) - zeta_med(H)) <= 1e-2);
}

TEST_CASE("tau of caps and of the whole sphere") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  std::vector<int> cap04 = mesh.cap_vertices(Vec3(0, 0, 1), 0.4);
  TauResult t04 = tau_med(mesh, cap04, 12);
  CHECK(t04.value == 0.0);

  std::vector<int> cap06 = mesh.cap_vertices(Vec3(0, 0, 1), 0.6);
  TauResult t06 = tau_med(mesh, cap06, 12);
  CHECK(t06.value == doctest::Approx(1.0));

  std::vector<int> all(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) all[v] = v;
  TauResult tall = tau_med(mesh, all, 3);
  CHECK(tall.value == doctest::Approx(1.0));

  CHECK_THROWS_AS(tau_med(mesh, std::vector<int>{}, 3), std::invalid_argument);
}

TEST_CASE("bracket inequality report on commuting and generic pairs") {
  SphereMesh mesh = SphereMesh::icosphere(4);
  auto zeta = [](const ScalarField& F) { return zeta_med(F); };

  ScalarField z = ScalarField::sample(mesh, [](const Vec3& p) { return p.z(); });
  ScalarField z2 = ScalarField::sample(mesh, [](const Vec3& p) { return p.z() * p.z(); });
  BracketIneqReport commuting = bracket_inequality_report({{z, z2}}, zeta);
  CHECK(commuting.rows[0].pi <= 1e-2);

  Rng rng(91);
  std::vector<std::pair<ScalarField, ScalarField>> pairs;
  for (int i = 0; i < 10; ++i)
    pairs.emplace_back(random_smooth_field(mesh, rng), random_smooth_field(mesh, rng));
  BracketIneqReport generic = bracket_inequality_report(pairs, zeta);
  CHECK(generic.max_ratio > 0.0);
  CHECK(std::isfinite(generic.max_ratio));
}

TEST_CASE("disconnected meshes are rejected") {
  SphereMesh base = SphereMesh::icosphere(0);
  SphereMesh broken = base;
  // Second copy of the icosahedron as a separate component.
  int n = base.vertex_count();
  for (const Vec3& v : base.vertices) broken.vertices.push_back(v);
  for (auto t : base.triangles)
    broken.triangles.push_back({t[0] + n, t[1] + n, t[2] + n});
  broken.vertex_weights.resize(2 * n);
  broken.neighbors.resize(2 * n);
  for (int v = 0; v < n; ++v) {
    broken.vertex_weights[v] = broken.vertex_weights[v + n] = base.vertex_weights[v] / 2;
    broken.neighbors[v + n] = base.neighbors[v];
    for (int& w : broken.neighbors[v + n]) w += n;
  }
  ScalarField F = ScalarField::from_values(broken, std::vector<double>(2 * n, 0.0));
  CHECK_THROWS_AS(build_reeb(F), std::invalid_argument);
  CHECK_FALSE(broken.connected());
}

TEST_CASE("reeb json export is well formed") {
  SphereMesh mesh = SphereMesh::icosphere(2);
  ScalarField z = ScalarField::sample(mesh, [](const Vec3& p) { return p.z(); });
  std::string s = reeb_to_json_string(build_reeb(z));
  CHECK(s.find("\"nodes\"") != std::string::npos);
  CHECK(s.find("\"measure\"") != std::string::npos);
}
