#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qslab/report.hpp"

namespace qslab::suites {

struct ExperimentConfig {
  std::string suite = "all";
  int level = 4;           // sphere mesh subdivision
  int grid_u = 64, grid_v = 64, grid_r = 32, grid_phi = 8;
  double eps = 0.1;
  double dt = 1e-3;
  int trials = 100;
  std::uint64_t seed = 12345;
  std::string out_path;
  std::string zeta_oracle = "median";      // registry spec for the reduce suite
  std::string mu_oracle = "calabi:0.25";   // registry spec for the reduce suite

  void validate() const;  // throws std::invalid_argument
};

// Suite names: hirzebruch, axioms, poisson, fiber, commute, group, reduce,
// all. Deterministic for a fixed config and seed.
bool known_suite(const std::string& name);
std::vector<std::string> suite_names();

report::Report run_suite(const ExperimentConfig& config);

}  // namespace qslab::suites
