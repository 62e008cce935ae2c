#include "heislab/harness/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "heislab/errors.hpp"
#include "heislab/harness/claims.hpp"
#include "heislab/harness/config.hpp"
#include "heislab/harness/experiments.hpp"

namespace heislab::harness {
namespace {

using nlohmann::json;

constexpr const char* kDefaultStatusPath = "results/claims_status.json";

struct CommonPaths {
  std::string config_file;
  std::string manifest = HEISLAB_DEFAULT_MANIFEST;
  std::string status = kDefaultStatusPath;
};

// Flag values as given, keyed by config key.
using FlagValues = std::map<std::string, std::string>;

void add_setting_flags(CLI::App* sub, FlagValues& values, std::map<std::string, CLI::Option*>& options) {
  for (const auto& key : known_keys()) {
    if (key == "experiment") continue;
    options[key] = sub->add_option("--" + key, values[key], "setting '" + key + "'");
  }
}

void add_path_flags(CLI::App* sub, CommonPaths& paths, bool with_config) {
  if (with_config) sub->add_option("--config", paths.config_file, "key = value settings file (flags win)");
  sub->add_option("--manifest", paths.manifest, "claims manifest (JSON)");
  sub->add_option("--status", paths.status, "claims status file updated after each run");
}

bool key_allowed(const Experiment& experiment, const std::string& key) {
  static const std::vector<std::string> common{"experiment", "seed", "out", "out-path", "threads"};
  return std::find(common.begin(), common.end(), key) != common.end() ||
         std::find(experiment.keys.begin(), experiment.keys.end(), key) != experiment.keys.end();
}

json cell_to_json(const Cell& cell) {
  return std::visit([](const auto& v) { return json(v); }, cell);
}

json report_to_json(const FitReport& r) {
  json j{{"claim_id", r.claim_id}, {"slope", r.slope},     {"intercept", r.intercept},
         {"r_squared", r.r_squared}, {"range", r.range}, {"tolerance", r.tolerance},
         {"pass", r.pass}};
  j["target"] = r.target ? json(*r.target) : json(nullptr);
  j["min_r_squared"] = r.min_r_squared ? json(*r.min_r_squared) : json(nullptr);
  return j;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path);
  file << text;
}

int run_experiment(const std::string& subcommand, const FlagValues& flags,
                   const std::map<std::string, CLI::Option*>& options, const CommonPaths& paths,
                   std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  std::vector<std::pair<std::string, std::string>> file_entries;
  if (!paths.config_file.empty()) file_entries = read_config_file(paths.config_file);

  // The experiment comes from the subcommand, or from the file for `run`.
  std::string name = subcommand == "run" ? "" : subcommand;
  for (const auto& [key, value] : file_entries) {
    if (key != "experiment") continue;
    if (!name.empty() && name != value)
      throw ConfigError("config file names experiment '" + value + "' but '" + name + "' was requested");
    name = value;
  }
  if (name.empty()) throw ConfigError("no experiment given (use a subcommand or experiment = ... in --config)");
  const auto& experiment = find_experiment(name);
  config.experiment = name;
  config.settings["experiment"] = name;

  auto apply_checked = [&](const std::string& key, const std::string& value) {
    if (!key_allowed(experiment, key))
      throw ConfigError("key '" + key + "' does not apply to experiment '" + name + "'");
    if (key != "experiment") apply_setting(config, key, value);
  };
  for (const auto& [key, value] : file_entries) apply_checked(key, value);
  for (const auto& [key, option] : options)
    if (option->count() > 0) apply_checked(key, flags.at(key));

  experiment.validate(config);
  const auto manifest = load_manifest(paths.manifest);

  const auto start = std::chrono::steady_clock::now();
  const auto output = experiment.run(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<FitReport> reports;
  for (const auto& fit : output.fits)
    if (const Claim* claim = manifest.find(fit.claim_id)) reports.push_back(evaluate(*claim, fit));

  if (config.out_format == OutFormat::Csv) {
    write_text(config.out_path, to_csv(output.table), out);
  } else {
    json summary;
    json config_json(config.settings);
    config_json["seed"] = config.seed;
    config_json["threads"] = config.threads;
    summary["config"] = config_json;
    summary["results"] = json::array();
    for (const auto& row : output.table.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[output.table.header[i]] = cell_to_json(row[i]);
      summary["results"].push_back(obj);
    }
    summary["fits"] = json::array();
    for (const auto& r : reports) summary["fits"].push_back(report_to_json(r));
    summary["runtime_seconds"] = seconds;
    summary["version"] = version();
    write_text(config.out_path, summary.dump(2) + "\n", out);
  }

  bool all_pass = true;
  if (!reports.empty()) {
    auto status = load_status(paths.status);
    for (const auto& r : reports) {
      status[r.claim_id] = r.pass ? "pass" : "fail";
      all_pass = all_pass && r.pass;
      err << fmt::format("[{}] {}: slope {:.4f} (r^2 {:.4f})", r.pass ? "PASS" : "FAIL", r.claim_id, r.slope,
                         r.r_squared);
      if (r.target) err << fmt::format(", target {:g} +/- {:g}", *r.target, r.tolerance);
      err << '\n';
    }
    save_status(paths.status, status);
  }
  return all_pass ? kExitOk : kExitClaimFailed;
}

}  // namespace

const char* version() { return HEISLAB_VERSION; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"oriented random walks, intersection tails and percolation on the Heisenberg group",
               "heislab"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  FlagValues flags;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  CommonPaths paths;

  for (const auto& e : experiments()) {
    auto* sub = app.add_subcommand(e.name, e.summary);
    add_setting_flags(sub, flags, options[e.name]);
    add_path_flags(sub, paths, true);
  }
  auto* run = app.add_subcommand("run", "run the experiment named in a --config file");
  add_setting_flags(run, flags, options["run"]);
  add_path_flags(run, paths, true);
  run->get_option("--config")->required();
  auto* claims = app.add_subcommand("claims", "list claims with their targets and last-run status");
  add_path_flags(claims, paths, false);
  auto* list = app.add_subcommand("list", "list experiments and their CSV columns");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (claims->parsed()) {
      const auto manifest = load_manifest(paths.manifest);
      out << claims_table(manifest, load_status(paths.status));
      return kExitOk;
    }
    if (list->parsed()) {
      for (const auto& e : experiments()) {
        out << fmt::format("{:<18} {}\n", e.name, e.summary);
        out << fmt::format("{:<18} columns: {}\n", "", fmt::join(e.header, ","));
      }
      return kExitOk;
    }
    const auto* sub = app.get_subcommands().front();
    return run_experiment(sub->get_name(), flags, options.at(sub->get_name()), paths, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CapExceededError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const OverflowError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const SolverError& e) {
    err << "solver: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace heislab::harness
