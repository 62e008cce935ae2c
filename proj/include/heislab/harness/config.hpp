#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heislab::harness {

enum class OutFormat { Csv, Json };

/// One experiment run. Optional fields fall back to per-experiment defaults.
struct ExperimentConfig {
  std::string experiment;
  std::optional<std::vector<int>> k_list;
  std::optional<std::vector<int>> radii;
  std::optional<std::vector<int>> n_list;
  std::optional<int> d;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> samples;
  std::optional<double> p;
  std::optional<int> seeds;
  std::optional<int> levels;
  std::optional<std::uint64_t> base_time;
  std::optional<std::uint64_t> num_paths;
  std::optional<std::string> graph;
  std::uint64_t seed = 1;
  OutFormat out_format = OutFormat::Csv;
  std::string out_path;  // empty: standard output
  int threads = 1;
  /// Every setting applied, canonical key -> text, for the JSON summary.
  std::map<std::string, std::string> settings;
};

/// Keys accepted in config files and as --flags. "experiment" is file-only.
const std::vector<std::string>& known_keys();

/// Parses `value` into the field named by `key`. Throws ConfigError for an
/// unknown key or a malformed value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads a key=value file ('#' starts a comment, blank lines ignored).
/// Throws ConfigError for unreadable files, malformed lines and unknown keys.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

std::vector<int> parse_int_list(const std::string& key, const std::string& text);

}  // namespace heislab::harness
