#include "qveq/report.hpp"

#include <chrono>
#include <ctime>

namespace qveq {

Json value_json(const Int& v) { return v.get_str(); }

Json value_json(const Rat& v) {
  if (rat_is_integer(v)) return v.get_num().get_str();
  return v.get_str();
}

Json value_json(const BigReal& v) {
  const auto t = v.hex_triple();
  Json j = Json::object();
  j["mantissa"] = t.mantissa;
  j["exponent"] = t.exponent;
  j["precision"] = t.precision;
  j["decimal"] = v.decimal(24);
  return j;
}

bool ReportDocument::all_passed() const {
  for (const auto& r : results)
    if (r.status == "fail") return false;
  return true;
}

Json ReportDocument::to_json() const {
  Json doc = Json::object();
  doc["version"] = kSchemaVersion;
  doc["header"] = Json{{"tool", "qveq"},
                       {"tool_version", kToolVersion},
                       {"generated_at", current_timestamp_utc()}};
  doc["config"] = config;
  Json rs = Json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& r : results) {
    rs.push_back(Json{{"name", r.name}, {"status", r.status}, {"details", r.details}});
    if (r.status == "pass") ++passed;
    if (r.status == "fail") ++failed;
  }
  doc["results"] = std::move(rs);
  Json es = Json::array();
  for (const auto& e : errata) es.push_back(e);
  doc["errata"] = std::move(es);
  doc["summary"] = Json{{"command", command},
                        {"checks_passed", passed},
                        {"checks_failed", failed},
                        {"errata_count", errata.size()},
                        {"status", failed == 0 ? "pass" : "fail"}};
  return doc;
}

std::string ReportDocument::serialize() const { return to_json().dump(2) + "\n"; }

std::string current_timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qveq
