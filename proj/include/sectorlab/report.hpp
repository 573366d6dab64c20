#pragma once

#include <json.hpp>
#include <string>

namespace sectorlab {

inline constexpr const char* kArtifactName = "sectorlab";
inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

using ordered_json = nlohmann::ordered_json;

inline ordered_json report_header(const ordered_json& config_echo) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
  j["config"] = config_echo;
  return j;
}

inline void add_check(ordered_json& report, const std::string& name, double value,
                      const std::string& relation, double bound) {
  bool pass = false;
  if (relation == "<") pass = value < bound;
  else if (relation == "<=") pass = value <= bound;
  else if (relation == ">") pass = value > bound;
  else if (relation == ">=") pass = value >= bound;
  if (!report.contains("checks")) report["checks"] = ordered_json::array();
  report["checks"].push_back({{"name", name},
                              {"value", value},
                              {"relation", relation},
                              {"bound", bound},
                              {"pass", pass}});
}

inline bool all_checks_pass(const ordered_json& report) {
  if (!report.contains("checks")) return true;
  for (const auto& c : report["checks"])
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

}  // namespace sectorlab
