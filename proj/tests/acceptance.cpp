// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in the suite implementations; this
// runner only selects and reports.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qslab/report.hpp"
#include "qslab/suites.hpp"

using qslab::report::Record;
using qslab::report::Report;
using qslab::suites::ExperimentConfig;
using qslab::suites::run_suite;

namespace {

struct CriterionResult {
  bool pass = true;
  double seconds = 0.0;
  std::vector<Record> records;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

CriterionResult from_records(const std::vector<Record>& records, double seconds) {
  CriterionResult r;
  r.records = records;
  r.seconds = seconds;
  for (const Record& rec : records)
    if (!rec.pass) r.pass = false;
  if (records.empty()) r.pass = false;
  return r;
}

std::vector<Record> with_prefix(const Report& rep, const std::string& prefix) {
  std::vector<Record> out;
  for (const Record& r : rep.records)
    if (r.name.rfind(prefix, 0) == 0) out.push_back(r);
  return out;
}

}  // namespace

int main() {
  ExperimentConfig base;
  base.seed = 20240817;

  int failures = 0;
  auto announce = [&](int idx, const std::string& label, const CriterionResult& result) {
    std::printf("[%d/9] %-58s %s (%.1f s)\n", idx, label.c_str(),
                result.pass ? "PASS" : "FAIL", result.seconds);
    for (const Record& r : result.records)
      if (!r.pass)
        std::printf("        failed: %s value=%.6g tol=%.6g\n", r.name.c_str(), r.value,
                    r.tolerance);
    if (!result.pass) ++failures;
  };

  // 1: exact ruled-surface arithmetic, < 1 s.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "hirzebruch";
    Report rep = run_suite(cfg);
    double dt = now_seconds() - t0;
    CriterionResult res = from_records(rep.records, dt);
    if (dt >= 1.0) res.pass = false;
    announce(1, "hirzebruch arithmetic k=1..10, exact", res);
  }

  Report axioms_report;
  // 2: median quasi-state axiom battery, level 4, 100 fields, < 60 s.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "axioms";
    cfg.level = 4;
    cfg.trials = 100;
    axioms_report = run_suite(cfg);
    double dt = now_seconds() - t0;
    CriterionResult res = from_records(with_prefix(axioms_report, "median-"), dt);
    if (dt >= 60.0) res.pass = false;
    announce(2, "median quasi-state axioms (level 4, 100 fields)", res);
  }

  // 3: bracket identity on the lift, grid 64x64x32, < 5 min.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "poisson";
    Report rep = run_suite(cfg);
    double dt = now_seconds() - t0;
    CriterionResult res = from_records(rep.records, dt);
    if (dt >= 300.0) res.pass = false;
    announce(3, "lift bracket identity (64x64x32, 10 pairs, doubling)", res);
  }

  // 4: fiber integral identity.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "fiber";
    Report rep = run_suite(cfg);
    CriterionResult res = from_records(rep.records, now_seconds() - t0);
    announce(4, "fiber integral identity (radial factor + two-sided)", res);
  }

  // 5: flow commutation.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "commute";
    Report rep = run_suite(cfg);
    CriterionResult res = from_records(rep.records, now_seconds() - t0);
    announce(5, "lifted flow commutation (rotation oracle + random field)", res);
  }

  // 6: group lemmas.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "group";
    Report rep = run_suite(cfg);
    CriterionResult res = from_records(rep.records, now_seconds() - t0);
    announce(6, "group lemmas (pullback bound, Cauchy, pushforward)", res);
  }

  // 7: reduction.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "reduce";
    Report rep = run_suite(cfg);
    CriterionResult res = from_records(rep.records, now_seconds() - t0);
    announce(7, "reduction (point oracle, axiom battery, scale identity)", res);
  }

  // 8: bracket inequality report stability (computed inside the axioms run).
  {
    CriterionResult res = from_records(with_prefix(axioms_report, "master-"), 0.0);
    announce(8, "bracket inequality: commuting pairs + ratio stability", res);
  }

  // 9: determinism of seeded reports.
  {
    double t0 = now_seconds();
    ExperimentConfig cfg = base;
    cfg.suite = "group";
    Report a = run_suite(cfg);
    Report b = run_suite(cfg);
    bool same = a.to_json_string(false) == b.to_json_string(false);
    CriterionResult res;
    res.seconds = now_seconds() - t0;
    res.pass = same;
    res.records.push_back(
        Record{"determinism-identical-reports", "seeded-determinism", same ? 0.0 : 1.0, 0.0,
               same});
    announce(9, "determinism: identical seeds, identical reports", res);
  }

  if (failures == 0)
    std::printf("acceptance: all 9 criteria PASS\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
