#include "heislab/exact_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "heislab/errors.hpp"

namespace heislab {
namespace {

void check_length(int k) {
  if (k < 1) throw std::invalid_argument("table length must be >= 1");
  if (k > max_table_length())
    throw CapExceededError("table length " + std::to_string(k) + " exceeds cap " +
                           std::to_string(max_table_length()) + " (set HEISLAB_MAX_TABLE_K)");
}

}  // namespace

int max_table_length() {
  if (const char* env = std::getenv("HEISLAB_MAX_TABLE_K")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 1 << 16) return static_cast<int>(value);
  }
  return kDefaultMaxTableLength;
}

CountWeightTable::CountWeightTable(int capacity)
    : capacity_(capacity),
      stride_(static_cast<std::size_t>(capacity) * (capacity > 0 ? capacity - 1 : 0) / 2 + 1),
      cells_(static_cast<std::size_t>(capacity + 1) * stride_, 0.0) {
  if (capacity < 0) throw std::invalid_argument("table capacity must be nonnegative");
  cells_[0] = 1.0;
}

void CountWeightTable::extend() {
  if (k_ >= capacity_) throw CapExceededError("count/weight table is full");
  const int j = k_;
  ++k_;
  // Row s of the new table mixes old row s (bit 0) with old row s-1 shifted
  // by j (bit 1). Rows are updated top-down so row s-1 is still old.
  for (int s = k_; s >= 1; --s) {
    double* cur = row(s);
    const double* below = row(s - 1);
    const std::int64_t lo = weight_lo(s), hi = weight_hi(s);
    for (std::int64_t w = lo; w <= hi; ++w) {
      const double from_below = w >= j ? below[w - j] : 0.0;
      cur[w] = 0.5 * (cur[w] + from_below);
    }
  }
  row(0)[0] *= 0.5;
}

double CountWeightTable::mass(int s, std::int64_t w) const {
  if (s < 0 || s > k_ || w < weight_lo(s) || w > weight_hi(s)) return 0.0;
  return row(s)[w];
}

double CountWeightTable::total_mass() const {
  double total = 0.0;
  for (int s = 0; s <= k_; ++s)
    for (std::int64_t w = weight_lo(s); w <= weight_hi(s); ++w) total += row(s)[w];
  return total;
}

std::vector<double> CountWeightTable::count_marginal() const {
  std::vector<double> marginal(static_cast<std::size_t>(k_) + 1, 0.0);
  for (int s = 0; s <= k_; ++s)
    for (std::int64_t w = weight_lo(s); w <= weight_hi(s); ++w) marginal[s] += row(s)[w];
  return marginal;
}

std::vector<double> CountWeightTable::weight_marginal() const {
  std::vector<double> marginal(static_cast<std::size_t>(max_weight()) + 1, 0.0);
  for (int s = 0; s <= k_; ++s)
    for (std::int64_t w = weight_lo(s); w <= weight_hi(s); ++w) marginal[w] += row(s)[w];
  return marginal;
}

CountWeightTable build_table(int k) {
  check_length(k);
  CountWeightTable table(k);
  for (int i = 0; i < k; ++i) table.extend();
  return table;
}

CollisionSummary summarize(const CountWeightTable& table) {
  CollisionSummary out;
  out.k = table.length();
  const int k = table.length();
  const auto counts = table.count_marginal();
  const int typical = k / 2;
  for (int s = 0; s <= k; ++s) {
    double squares = 0.0;
    for (std::int64_t w = table.weight_lo(s); w <= table.weight_hi(s); ++w) {
      const double m = table.mass(s, w);
      squares += m * m;
    }
    out.collision += squares;
    out.count_match += counts[s] * counts[s];
    if (counts[s] > 0.0) {
      // P[S=s] * sum_w (mass/P[S=s])^2 = squares / P[S=s]
      out.conditional_match += squares / counts[s];
      if (s == typical) out.conditional_match_typical = squares / (counts[s] * counts[s]);
    }
  }
  for (double p : table.weight_marginal()) {
    out.weighted_match += p * p;
    out.max_point_mass = std::max(out.max_point_mass, p);
  }
  return out;
}

void for_each_length(int max_k, const std::function<void(const CountWeightTable&)>& visit) {
  check_length(max_k);
  CountWeightTable table(max_k);
  for (int k = 1; k <= max_k; ++k) {
    table.extend();
    visit(table);
  }
}

std::vector<CollisionSummary> summaries(std::span<const int> ks) {
  if (ks.empty()) return {};
  for (int k : ks) check_length(k);
  const int max_k = *std::max_element(ks.begin(), ks.end());
  std::vector<CollisionSummary> out(ks.size());
  for_each_length(max_k, [&](const CountWeightTable& table) {
    bool wanted = false;
    for (int k : ks) wanted = wanted || k == table.length();
    if (!wanted) return;
    const auto summary = summarize(table);
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (ks[i] == table.length()) out[i] = summary;
  });
  return out;
}

double collision_probability(int k) { return summarize(build_table(k)).collision; }
double weighted_match_probability(int k) { return summarize(build_table(k)).weighted_match; }
double max_point_mass(int k) { return summarize(build_table(k)).max_point_mass; }
double conditional_match_probability(int k) { return summarize(build_table(k)).conditional_match; }
double conditional_match_probability_typical(int k) {
  return summarize(build_table(k)).conditional_match_typical;
}
double count_match_probability(int k) { return summarize(build_table(k)).count_match; }

DyadicUniformity dyadic_uniformity(std::int64_t k) {
  if (k < 2) throw std::invalid_argument("dyadic_uniformity: k must be >= 2");
  int m = 0;
  while ((std::int64_t{1} << (m + 1)) <= k) ++m;
  if (m > 24) throw CapExceededError("dyadic_uniformity: support too large");
  // Integer counts of sum_{j<m} 2^j bit(2^j) over the 2^m relevant bit patterns.
  std::vector<std::uint64_t> counts{1};
  for (int j = 0; j < m; ++j) {
    const std::size_t shift = std::size_t{1} << j;
    std::vector<std::uint64_t> next(counts.size() + shift, 0);
    for (std::size_t v = 0; v < counts.size(); ++v) {
      next[v] += counts[v];
      next[v + shift] += counts[v];
    }
    counts.swap(next);
  }
  DyadicUniformity out;
  out.support_size = static_cast<std::int64_t>(
      std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c > 0; }));
  out.is_uniform = counts.size() == (std::size_t{1} << m) &&
                   std::all_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 1; });
  out.lower_bound = std::max(1.0, static_cast<double>(k) / 2.0 - 1.0);
  return out;
}

}  // namespace heislab
