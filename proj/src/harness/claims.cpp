#include "heislab/harness/claims.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "heislab/errors.hpp"

namespace heislab::harness {

using nlohmann::json;

const Claim* ClaimsManifest::find(const std::string& claim_id) const {
  for (const auto& c : claims)
    if (c.claim_id == claim_id) return &c;
  return nullptr;
}

ClaimsManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read claims manifest " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("claims manifest " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("claims") || !doc["claims"].is_array())
    throw ConfigError("claims manifest must be an object with a 'claims' array");
  const auto ids = known_claim_ids();
  static const std::set<std::string> allowed_fields{"claim_id", "experiment", "target",
                                                    "tolerance", "min_r_squared", "citation"};
  ClaimsManifest manifest;
  std::set<std::string> seen;
  for (const auto& entry : doc["claims"]) {
    try {
      for (const auto& [field, value] : entry.items())
        if (!allowed_fields.contains(field)) throw ConfigError("unknown manifest field '" + field + "'");
      Claim claim;
      claim.claim_id = entry.at("claim_id").get<std::string>();
      claim.experiment = entry.at("experiment").get<std::string>();
      if (entry.contains("target") && !entry["target"].is_null()) claim.target = entry["target"].get<double>();
      claim.tolerance = entry.value("tolerance", 0.0);
      if (entry.contains("min_r_squared") && !entry["min_r_squared"].is_null())
        claim.min_r_squared = entry["min_r_squared"].get<double>();
      claim.citation = entry.value("citation", std::string{});
      if (std::find(ids.begin(), ids.end(), claim.claim_id) == ids.end())
        throw ConfigError("unknown claim id '" + claim.claim_id + "'");
      const auto& experiment = find_experiment(claim.experiment);
      if (std::find(experiment.claim_ids.begin(), experiment.claim_ids.end(), claim.claim_id) ==
          experiment.claim_ids.end())
        throw ConfigError("claim '" + claim.claim_id + "' is not produced by experiment '" + claim.experiment + "'");
      if (claim.tolerance < 0.0) throw ConfigError("claim '" + claim.claim_id + "' has a negative tolerance");
      if (!claim.target && !claim.min_r_squared)
        throw ConfigError("claim '" + claim.claim_id + "' needs a target or min_r_squared");
      if (!seen.insert(claim.claim_id).second) throw ConfigError("duplicate claim id '" + claim.claim_id + "'");
      manifest.claims.push_back(std::move(claim));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed manifest entry: ") + e.what());
    }
  }
  return manifest;
}

FitReport evaluate(const Claim& claim, const FitResult& fit) {
  FitReport report;
  report.claim_id = claim.claim_id;
  report.slope = fit.fit.slope;
  report.intercept = fit.fit.intercept;
  report.r_squared = fit.fit.r_squared;
  report.range = fit.range;
  report.target = claim.target;
  report.tolerance = claim.tolerance;
  report.min_r_squared = claim.min_r_squared;
  report.pass = true;
  if (claim.target) report.pass = std::abs(fit.fit.slope - *claim.target) <= claim.tolerance;
  if (claim.min_r_squared) report.pass = report.pass && fit.fit.r_squared >= *claim.min_r_squared;
  return report;
}

std::map<std::string, std::string> load_status(const std::filesystem::path& path) {
  std::map<std::string, std::string> status;
  std::ifstream in(path);
  if (!in) return status;
  try {
    const auto doc = json::parse(in);
    for (const auto& [id, value] : doc.items()) status[id] = value.get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError("claims status file " + path.string() + ": " + e.what());
  }
  return status;
}

void save_status(const std::filesystem::path& path, const std::map<std::string, std::string>& status) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write claims status file " + path.string());
  out << json(status).dump(2) << '\n';
}

std::string claims_table(const ClaimsManifest& manifest, const std::map<std::string, std::string>& status) {
  std::string out = fmt::format("{:<26} {:<18} {:>8} {:>9} {:>7}  {}\n", "claim_id", "experiment", "target",
                                "tolerance", "min_r2", "status");
  for (const auto& c : manifest.claims) {
    const auto it = status.find(c.claim_id);
    out += fmt::format("{:<26} {:<18} {:>8} {:>9} {:>7}  {}\n", c.claim_id, c.experiment,
                       c.target ? fmt::format("{:g}", *c.target) : "-", fmt::format("{:g}", c.tolerance),
                       c.min_r_squared ? fmt::format("{:g}", *c.min_r_squared) : "-",
                       it == status.end() ? "not run" : it->second);
  }
  return out;
}

}  // namespace heislab::harness
