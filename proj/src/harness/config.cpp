#include "heislab/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "heislab/errors.hpp"

namespace heislab::harness {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError("invalid integer for '" + key + "': '" + text + "'");
  return value;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double value = std::stod(t, &used);
    if (used != t.size()) throw ConfigError("");
    return value;
  } catch (...) {
    throw ConfigError("invalid number for '" + key + "': '" + text + "'");
  }
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "experiment", "k-list", "radii",   "n-list", "d",         "horizon",   "samples",
      "p",          "seeds",  "levels",  "base-time", "num-paths", "graph",  "seed",
      "out",        "out-path", "threads"};
  return keys;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (trim(item).empty()) throw ConfigError("empty entry in list '" + key + "'");
    values.push_back(parse_integer<int>(key, item));
  }
  if (values.empty()) throw ConfigError("list '" + key + "' is empty");
  return values;
}

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "experiment") config.experiment = trim(value);
  else if (key == "k-list") config.k_list = parse_int_list(key, value);
  else if (key == "radii") config.radii = parse_int_list(key, value);
  else if (key == "n-list") config.n_list = parse_int_list(key, value);
  else if (key == "d") config.d = parse_integer<int>(key, value);
  else if (key == "horizon") config.horizon = parse_integer<std::uint64_t>(key, value);
  else if (key == "samples") config.samples = parse_integer<std::uint64_t>(key, value);
  else if (key == "p") config.p = parse_double(key, value);
  else if (key == "seeds") config.seeds = parse_integer<int>(key, value);
  else if (key == "levels") config.levels = parse_integer<int>(key, value);
  else if (key == "base-time") config.base_time = parse_integer<std::uint64_t>(key, value);
  else if (key == "num-paths") config.num_paths = parse_integer<std::uint64_t>(key, value);
  else if (key == "graph") config.graph = trim(value);
  else if (key == "seed") config.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "threads") {
    config.threads = parse_integer<int>(key, value);
    if (config.threads < 1 || config.threads > 1024) throw ConfigError("threads must lie in [1, 1024]");
  } else if (key == "out") {
    const auto v = trim(value);
    if (v == "csv") config.out_format = OutFormat::Csv;
    else if (v == "json") config.out_format = OutFormat::Json;
    else throw ConfigError("out must be csv or json, got '" + value + "'");
  } else if (key == "out-path") config.out_path = trim(value);
  else throw ConfigError("unknown config key '" + key + "'");
  config.settings[key] = trim(value);
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

}  // namespace heislab::harness
