#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heislab/harness/experiments.hpp"

namespace heislab::harness {

/// Manifest entry. A claim passes when |slope - target| <= tolerance and,
/// when min_r_squared is set, the fit reaches it. A claim without a target
/// only checks linearity.
struct Claim {
  std::string claim_id;
  std::string experiment;
  std::optional<double> target;
  double tolerance = 0.0;
  std::optional<double> min_r_squared;
  std::string citation;
};

struct ClaimsManifest {
  std::vector<Claim> claims;
  const Claim* find(const std::string& claim_id) const;
};

/// Loads and validates a JSON manifest: {"claims": [...]}. Unknown claim ids,
/// unknown experiments, duplicates and negative tolerances are ConfigErrors.
ClaimsManifest load_manifest(const std::filesystem::path& path);

struct FitReport {
  std::string claim_id;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> range;
  std::optional<double> target;
  double tolerance = 0.0;
  std::optional<double> min_r_squared;
  bool pass = false;
};

FitReport evaluate(const Claim& claim, const FitResult& fit);

/// claim id -> "pass" | "fail"; a missing file means nothing has run.
std::map<std::string, std::string> load_status(const std::filesystem::path& path);
void save_status(const std::filesystem::path& path, const std::map<std::string, std::string>& status);

/// Human-readable table: claim id, experiment, target, tolerance, status.
std::string claims_table(const ClaimsManifest& manifest,
                         const std::map<std::string, std::string>& status);

}  // namespace heislab::harness
