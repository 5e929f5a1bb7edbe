#include "qslab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <json.hpp>

namespace qslab::report {

bool Report::all_pass() const {
  for (const Record& r : records)
    if (!r.pass) return false;
  return true;
}

void Report::add(const std::string& name, const std::string& anchor, double value,
                 double tolerance, bool pass) {
  records.push_back(Record{name, anchor, value, tolerance, pass});
}

void Report::add_bound(const std::string& name, const std::string& anchor, double value,
                       double tolerance) {
  add(name, anchor, value, tolerance, std::isfinite(value) && std::abs(value) <= tolerance);
}

std::string Report::to_json_string(bool include_timestamp, int indent) const {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["suite"] = suite;
  j["seed"] = seed;
  if (include_timestamp) j["timestamp"] = timestamp;
  j["environment"] = environment;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) j["config"][k] = v;
  j["records"] = nlohmann::ordered_json::array();
  for (const Record& r : records)
    j["records"].push_back({{"name", r.name},
                            {"anchor", r.anchor},
                            {"value", r.value},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass}});
  j["all_pass"] = all_pass();
  return j.dump(indent);
}

std::string current_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string environment_stamp() {
#if defined(__clang__)
  return "clang " + std::to_string(__clang_major__) + "." + std::to_string(__clang_minor__);
#elif defined(__GNUC__)
  return "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__);
#else
  return "unknown-compiler";
#endif
}

}  // namespace qslab::report
