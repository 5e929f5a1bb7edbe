#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qslab::report {

// One verification record: what was measured, against which identity, and
// whether it landed inside the stated tolerance.
struct Record {
  std::string name;
  std::string anchor;  // stable identifier of the identity being checked
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  int schema_version = 1;
  std::string suite;
  std::uint64_t seed = 0;
  std::string timestamp;  // excluded from determinism comparisons
  std::string environment;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Record> records;

  bool all_pass() const;
  void add(const std::string& name, const std::string& anchor, double value, double tolerance,
           bool pass);
  // Convenience for |value| <= tolerance checks.
  void add_bound(const std::string& name, const std::string& anchor, double value,
                 double tolerance);
  std::string to_json_string(bool include_timestamp = true, int indent = 2) const;
};

std::string current_timestamp();
std::string environment_stamp();

}  // namespace qslab::report
