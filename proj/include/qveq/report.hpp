#pragma once

// Structured report documents. One schema for every command:
// {version, header{generated_at}, config, results[], errata[], summary}.
// Big integers are decimal strings; floats are (hex mantissa, exponent,
// precision) triples with a decimal rendering; the timestamp is the only
// nondeterministic field and lives in the header.

#include <string>
#include <vector>

#include <json.hpp>

#include "qveq/numeric.hpp"

namespace qveq {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

Json value_json(const Int& v);
Json value_json(const Rat& v);
Json value_json(const BigReal& v);

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | info
  Json details = Json::object();
};

struct ReportDocument {
  std::string command;
  Json config = Json::object();
  std::vector<CheckResult> results;
  std::vector<Json> errata;

  void add_pass(const std::string& name, Json details, bool ok) {
    results.push_back({name, ok ? "pass" : "fail", std::move(details)});
  }
  void add_info(const std::string& name, Json details) {
    results.push_back({name, "info", std::move(details)});
  }

  bool all_passed() const;
  Json to_json() const;
  std::string serialize() const;  // to_json() rendered with a stable layout
};

// ISO-8601 UTC; isolated from everything the determinism contract covers.
std::string current_timestamp_utc();

}  // namespace qveq
