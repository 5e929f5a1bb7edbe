#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qslab/bundle_ops.hpp"
#include "qslab/expr.hpp"
#include "qslab/hirzebruch.hpp"
#include "qslab/numerics.hpp"
#include "qslab/quasimorphism.hpp"
#include "qslab/reduction.hpp"
#include "qslab/reeb.hpp"
#include "qslab/suites.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qslab;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("QSLAB_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      throw CLI::ValidationError("QSLAB_SEED", "not an unsigned integer");
    }
  }
  return fallback;
}

void parse_grid(const std::string& spec, suites::ExperimentConfig& cfg) {
  int vals[4];
  if (std::sscanf(spec.c_str(), "%d,%d,%d,%d", &vals[0], &vals[1], &vals[2], &vals[3]) != 4)
    throw CLI::ValidationError("--grid", "expected four comma-separated counts u,v,r,phi");
  cfg.grid_u = vals[0];
  cfg.grid_v = vals[1];
  cfg.grid_r = vals[2];
  cfg.grid_phi = vals[3];
}

void load_config_file(const std::string& path, suites::ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  ordered_json j = ordered_json::parse(in);
  if (j.contains("level")) cfg.level = j["level"];
  if (j.contains("eps")) cfg.eps = j["eps"];
  if (j.contains("dt")) cfg.dt = j["dt"];
  if (j.contains("trials")) cfg.trials = j["trials"];
  if (j.contains("seed")) cfg.seed = j["seed"];
  if (j.contains("out")) cfg.out_path = j["out"];
  if (j.contains("zeta")) cfg.zeta_oracle = j["zeta"];
  if (j.contains("mu")) cfg.mu_oracle = j["mu"];
  if (j.contains("grid")) {
    auto g = j["grid"];
    cfg.grid_u = g.at(0);
    cfg.grid_v = g.at(1);
    cfg.grid_r = g.at(2);
    cfg.grid_phi = g.at(3);
  }
}

int emit_report(const report::Report& rep, const std::string& out_path) {
  for (const auto& r : rep.records)
    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name << "  value=" << r.value
              << "  tol=" << r.tolerance << '\n';
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write report to " << out_path << '\n';
      return kExitUsage;
    }
    out << rep.to_json_string() << '\n';
  } else {
    std::cout << rep.to_json_string() << '\n';
  }
  return rep.all_pass() ? kExitPass : kExitCheckFailure;
}

int run_group_qm(const std::string& pattern, int trials, int max_len, std::uint64_t seed,
                 int power) {
  using namespace qslab::group;
  Word w = Word::parse(pattern);
  QuasiMorphism mu = brooks_qm(w);
  WordSampler sampler(seed, max_len, 2);
  double lower = defect_lower_bound(mu, sampler, trials);
  ordered_json j;
  j["pattern"] = w.str();
  j["defect_upper_bound"] = *mu.defect_bound;
  j["defect_sampled_lower_bound"] = lower;
  j["trials"] = trials;
  j["max_len"] = max_len;
  j["seed"] = seed;
  if (power >= 1) {
    auto h = homogenize(mu, w, power);
    j["homogenized"] = {{"word", w.str()}, {"power", power}, {"value", h.value},
                        {"error_radius", h.error_radius}};
  }
  std::cout << j.dump(2) << '\n';
  return kExitPass;
}

int run_sphere(int level, const std::string& field_expr, double dt, const std::string& off_path) {
  geom::SphereMesh mesh = geom::SphereMesh::icosphere(level);
  ordered_json j;
  j["level"] = level;
  j["vertices"] = mesh.vertex_count();
  j["triangles"] = mesh.triangle_count();
  j["euler_characteristic"] = mesh.euler_characteristic();
  if (!off_path.empty()) {
    std::ofstream out(off_path);
    if (!out) {
      std::cerr << "cannot write " << off_path << '\n';
      return kExitUsage;
    }
    mesh.save_off(out);
    j["off_written_to"] = off_path;
  }
  if (!field_expr.empty()) {
    geom::ScalarField F = geom::ScalarField::sample(mesh, expr::compile(field_expr));
    j["field"] = field_expr;
    j["integral"] = geom::integrate(F);
    j["min"] = *std::min_element(F.values.begin(), F.values.end());
    j["max"] = *std::max_element(F.values.begin(), F.values.end());
    // Short autonomous flow as an energy-conservation probe.
    geom::HamiltonianPath path = geom::HamiltonianPath::constant(F, 10);
    geom::Vec3 p(0.3, -0.5, 0.81);
    p.normalize();
    geom::Vec3 q = geom::flow_point(path, p, 0.0, 1.0, dt);
    j["flow_probe"] = {{"dt", dt},
                       {"energy_drift", std::abs(F.eval(q) - F.eval(p))},
                       {"norm_drift", std::abs(q.norm() - 1.0)}};
  }
  std::cout << j.dump(2) << '\n';
  return kExitPass;
}

int run_median(int level, const std::string& field_expr, double tau_cap_area,
               const std::string& report_path) {
  geom::SphereMesh mesh = geom::SphereMesh::icosphere(level);
  geom::ScalarField F = geom::ScalarField::sample(mesh, expr::compile(field_expr));
  reeb::ReebGraph graph = reeb::build_reeb(F);
  reeb::MedianPoint mp = reeb::median(graph);
  ordered_json j;
  j["field"] = field_expr;
  j["level"] = level;
  j["nodes"] = graph.nodes.size();
  j["edges"] = graph.edges.size();
  j["leaves"] = graph.leaf_count();
  j["zeta_med"] = mp.level;
  j["median_at_node"] = mp.node >= 0;
  j["median_tie"] = mp.tie;
  if (tau_cap_area > 0.0) {
    auto cap = mesh.cap_vertices(geom::Vec3(0, 0, 1), tau_cap_area);
    reeb::TauResult tau = reeb::tau_med(mesh, cap, 12);
    j["tau"] = {{"cap_area", tau_cap_area}, {"value", tau.value},
                {"best_shoulder", tau.best_shoulder}};
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write " << report_path << '\n';
      return kExitUsage;
    }
    out << reeb::reeb_to_json_string(graph) << '\n';
    j["reeb_graph_written_to"] = report_path;
  }
  std::cout << j.dump(2) << '\n';
  return kExitPass;
}

int run_bundle_check(const std::string& check, double eps, const std::string& grid_spec,
                     std::uint64_t seed) {
  suites::ExperimentConfig cfg;
  cfg.eps = eps;
  cfg.seed = seed;
  if (!grid_spec.empty()) parse_grid(grid_spec, cfg);
  cfg.suite = check == "sgrad" ? "poisson" : check;
  ordered_json j;
  j["check"] = check;
  j["eps"] = eps;

  geom::SphereMesh mesh = geom::SphereMesh::icosphere(3);
  bundle::ThetaProfile theta = bundle::ThetaProfile::interpolating(eps);
  Rng rng(seed);
  geom::ScalarField H = geom::ScalarField::sample(
      mesh, [&](const geom::Vec3& p) { return p.x() + 0.4 * p.z() * p.z(); });
  geom::ScalarField K =
      geom::ScalarField::sample(mesh, [&](const geom::Vec3& p) { return p.y() - 0.2 * p.x(); });

  if (check == "poisson") {
    bundle::BundleGrid grid{cfg.grid_u, cfg.grid_v, cfg.grid_r, cfg.grid_phi, 2.0, 0.9};
    auto pts = grid.sample_points(0.9);
    auto rep = bundle::bracket_identity_residual(H, K, theta, pts, grid.base_step(),
                                                 grid.fiber_step(0.9));
    j["max_rel_vs_base_formula"] = rep.versus_base.max_rel;
    j["max_rel_vs_pullbacks"] = rep.versus_pullbacks.max_rel;
    j["points"] = rep.versus_base.points;
  } else if (check == "fiber") {
    bundle::BundleGrid grid{cfg.grid_u, cfg.grid_v, cfg.grid_r, cfg.grid_phi, 2.0, 0.999};
    auto r = bundle::fiber_integral_residual(H, theta, grid);
    j["radial_factor"] = r.radial_factor;
    j["radial_factor_printed"] = r.radial_factor_printed;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["residual"] = r.residual;
  } else if (check == "commute") {
    geom::HamiltonianPath F = geom::HamiltonianPath::constant(
        geom::ScalarField::sample(mesh, [](const geom::Vec3& p) { return p.z(); }), 10);
    std::vector<bundle::ChartPoint> seeds = {
        bundle::ChartPoint::from_polar(0, 0.4, 0.2, 0.3, 0.7),
        bundle::ChartPoint::from_polar(1, -0.3, 0.5, 0.3, 2.0)};
    auto rep = bundle::flow_commutation_residual(F, theta, seeds, 1e-3, 5);
    j["max_base_distance"] = rep.max_base_distance;
    j["max_r_drift"] = rep.max_r_drift;
  } else if (check == "sgrad") {
    bundle::BundleGrid grid{16, 16, 8, 4, 1.4, 0.9};
    auto pts = grid.sample_points(0.9);
    auto rep = bundle::sgrad_pushforward_residual(H, theta, pts, grid.base_step(),
                                                  grid.fiber_step(0.9));
    j["max_abs"] = rep.max_abs;
    j["max_rel"] = rep.max_rel;
    j["points"] = rep.points;
  } else {
    throw CLI::ValidationError("--check", "unknown check '" + check + "'");
  }
  std::cout << j.dump(2) << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qslab: symplectic quasi-state and quasi-morphism laboratory"};
  app.require_subcommand(1);

  // Focused tools.
  auto* hz = app.add_subcommand(
      "hirzebruch", "ruled-surface intersection arithmetic (suite when --k is absent)");
  int hz_k = 0;
  bool hz_json = false;
  hz->add_option("--k", hz_k, "classify this surface index instead of running the suite");
  hz->add_flag("--json", hz_json, "emit JSON");
  std::string hz_out;
  hz->add_option("--out", hz_out, "report JSON path (suite mode)");

  auto* gq = app.add_subcommand("group-qm", "counting quasi-morphism diagnostics");
  std::string gq_pattern = "ab";
  int gq_trials = 1000, gq_maxlen = 20, gq_power = 0;
  std::uint64_t gq_seed = 1;
  gq->add_option("--pattern", gq_pattern, "pattern word, e.g. ab");
  gq->add_option("--trials", gq_trials, "sampled pairs for the defect bound");
  gq->add_option("--max-len", gq_maxlen, "maximum sampled word length");
  gq->add_option("--seed", gq_seed, "sampler seed (QSLAB_SEED fallback)");
  gq->add_option("--power", gq_power, "homogenize the pattern at this power");

  auto* sp = app.add_subcommand("sphere", "mesh and field diagnostics");
  int sp_level = 3;
  std::string sp_field, sp_off;
  double sp_dt = 1e-3;
  sp->add_option("--level", sp_level, "icosphere subdivision level");
  sp->add_option("--field", sp_field, "field expression over x,y,z");
  sp->add_option("--dt", sp_dt, "flow probe step");
  sp->add_option("--off", sp_off, "export the mesh in OFF format");

  auto* md = app.add_subcommand("median", "median quasi-state of a field");
  int md_level = 4;
  std::string md_field = "z";
  double md_tau = 0.0;
  std::string md_report;
  md->add_option("--level", md_level, "icosphere subdivision level");
  md->add_option("--field", md_field, "field expression over x,y,z");
  md->add_option("--tau-cap-area", md_tau, "also bound tau of a polar cap of this area");
  md->add_option("--report", md_report, "write the contour tree as JSON");

  auto* bd = app.add_subcommand("bundle", "disk-bundle residual checks");
  std::string bd_check = "poisson", bd_grid;
  double bd_eps = 0.1;
  std::uint64_t bd_seed = 1;
  bd->add_option("--check", bd_check, "poisson | fiber | commute | sgrad")->required();
  bd->add_option("--eps", bd_eps, "profile parameter");
  bd->add_option("--grid", bd_grid, "u,v,r,phi sample counts");
  bd->add_option("--seed", bd_seed, "seed");

  // Verification suites.
  struct SuiteArgs {
    CLI::App* cmd = nullptr;
    suites::ExperimentConfig cfg;
    std::string grid_spec;
    std::string config_path;
    bool seed_given = false;
  };
  std::vector<SuiteArgs> suite_args;
  suite_args.reserve(suites::suite_names().size());  // option callbacks hold pointers
  for (const std::string& name : suites::suite_names()) {
    if (name == "hirzebruch") continue;  // folded into the arithmetic subcommand
    suite_args.emplace_back();
    SuiteArgs& sa = suite_args.back();
    sa.cfg.suite = name;
    sa.cmd = app.add_subcommand(name, "verification suite '" + name + "'");
    sa.cmd->add_option("--level", sa.cfg.level, "icosphere level");
    sa.cmd->add_option("--trials", sa.cfg.trials, "randomized trials");
    sa.cmd->add_option("--eps", sa.cfg.eps, "profile parameter");
    sa.cmd->add_option("--dt", sa.cfg.dt, "integrator step");
    sa.cmd->add_option("--grid", sa.grid_spec, "u,v,r,phi sample counts");
    sa.cmd->add_option("--out", sa.cfg.out_path, "report JSON path");
    sa.cmd->add_option("--config", sa.config_path, "JSON config file");
    sa.cmd->add_option("--zeta", sa.cfg.zeta_oracle,
                       "quasi-state oracle: median | point:u,v[,chart] | mean");
    sa.cmd->add_option("--mu", sa.cfg.mu_oracle,
                       "path oracle: zero | calabi:area | calabi-annulus:r0,r1");
    sa.cmd->add_option_function<std::uint64_t>(
        "--seed",
        [&sa](const std::uint64_t& s) {
          sa.cfg.seed = s;
          sa.seed_given = true;
        },
        "run seed (QSLAB_SEED fallback)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (hz->parsed()) {
      if (hz_k <= 0) {
        suites::ExperimentConfig cfg;
        cfg.suite = "hirzebruch";
        cfg.seed = env_seed(cfg.seed);
        return emit_report(suites::run_suite(cfg), hz_out);
      }
      auto c = hirzebruch::classify(hz_k);
      auto ids = hirzebruch::verify_class_identities(hz_k);
      ordered_json j;
      j["k"] = c.k;
      j["l"] = c.l;
      j["type"] = c.type;
      if (c.even) {
        j["area_fiber_class"] = c.area_fiber;
        j["area_section_class"] = c.area_section;
      } else {
        j["omega_L"] = c.omega_L;
        j["omega_E"] = c.omega_E;
      }
      j["identities_ok"] = ids.ok;
      if (hz_json)
        std::cout << j.dump(2) << '\n';
      else
        std::cout << j.dump() << '\n';
      return ids.ok ? kExitPass : kExitCheckFailure;
    }
    if (gq->parsed())
      return run_group_qm(gq_pattern, gq_trials, gq_maxlen, env_seed(gq_seed), gq_power);
    if (sp->parsed()) return run_sphere(sp_level, sp_field, sp_dt, sp_off);
    if (md->parsed()) return run_median(md_level, md_field, md_tau, md_report);
    if (bd->parsed()) return run_bundle_check(bd_check, bd_eps, bd_grid, env_seed(bd_seed));

    for (SuiteArgs& sa : suite_args) {
      if (!sa.cmd->parsed()) continue;
      if (!sa.config_path.empty()) load_config_file(sa.config_path, sa.cfg);
      if (!sa.grid_spec.empty()) parse_grid(sa.grid_spec, sa.cfg);
      if (!sa.seed_given) sa.cfg.seed = env_seed(sa.cfg.seed);
      report::Report rep = suites::run_suite(sa.cfg);
      return emit_report(rep, sa.cfg.out_path);
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
  return kExitUsage;
}
