#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "heislab/fit.hpp"
#include "heislab/harness/config.hpp"

namespace heislab::harness {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// A fitted exponent tied to a claim id from the manifest.
struct FitResult {
  std::string claim_id;
  LinearFit fit;
  std::vector<double> range;  // abscissae used
};

struct ExperimentOutput {
  Table table;
  std::vector<FitResult> fits;
};

struct Experiment {
  std::string name;
  std::string summary;
  std::vector<std::string> header;
  /// Experiment-specific keys; seed, out, out-path and threads are always allowed.
  std::vector<std::string> keys;
  /// Claim ids this experiment can emit.
  std::vector<std::string> claim_ids;
  /// Checks every numeric setting against the preconditions of the
  /// operations it feeds. Throws ConfigError or CapExceededError.
  void (*validate)(const ExperimentConfig&);
  ExperimentOutput (*run)(const ExperimentConfig&);
};

const std::vector<Experiment>& experiments();

/// Throws ConfigError for an unknown name.
const Experiment& find_experiment(const std::string& name);

/// Every claim id any experiment can emit.
std::vector<std::string> known_claim_ids();

/// Comma-separated rendering with a fixed header; doubles use 17
/// significant digits so reruns are byte-identical.
std::string to_csv(const Table& table);

std::string format_cell(const Cell& cell);

}  // namespace heislab::harness
