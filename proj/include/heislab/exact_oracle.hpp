#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace heislab {

/// Default largest word length for a count/weight table. A table of length k
/// holds (k + 1) * (k (k - 1) / 2 + 1) doubles (about 540 MB at k = 512).
/// The environment variable HEISLAB_MAX_TABLE_K overrides it.
inline constexpr int kDefaultMaxTableLength = 512;

int max_table_length();

/// Joint law of (S, W) = (sum_j bit_j, sum_j j * bit_j) over words of k
/// i.i.d. fair bits, j = 0..k-1. Grown one bit at a time; every cell is a
/// dyadic rational count / 2^k held exactly in double precision for k <= 53.
class CountWeightTable {
 public:
  /// Empty word (k = 0) with room to extend up to `capacity` bits.
  explicit CountWeightTable(int capacity);

  /// Appends bit index j = length().
  void extend();

  int length() const { return k_; }
  int capacity() const { return capacity_; }
  std::int64_t max_weight() const { return static_cast<std::int64_t>(k_) * (k_ - 1) / 2; }

  double mass(int s, std::int64_t w) const;
  /// Support bounds of row s: s(s-1)/2 <= w <= s(2k-s-1)/2.
  std::int64_t weight_lo(int s) const { return static_cast<std::int64_t>(s) * (s - 1) / 2; }
  std::int64_t weight_hi(int s) const {
    return static_cast<std::int64_t>(s) * (2 * k_ - s - 1) / 2;
  }

  double total_mass() const;
  std::vector<double> count_marginal() const;
  std::vector<double> weight_marginal() const;

 private:
  double* row(int s) { return cells_.data() + static_cast<std::size_t>(s) * stride_; }
  const double* row(int s) const { return cells_.data() + static_cast<std::size_t>(s) * stride_; }

  int capacity_;
  int k_ = 0;
  std::size_t stride_;
  std::vector<double> cells_;
};

/// Table for words of length k, 1 <= k <= max_table_length().
CountWeightTable build_table(int k);

/// All exact statistics derived from one table.
struct CollisionSummary {
  int k = 0;
  double collision = 0.0;          // sum mass(s,w)^2: same endpoint
  double count_match = 0.0;        // sum P[S=s]^2
  double weighted_match = 0.0;     // sum P[W=w]^2
  double max_point_mass = 0.0;     // max_w P[W=w]
  double conditional_match = 0.0;  // sum_s P[S=s] sum_w P[W=w | S=s]^2
  double conditional_match_typical = 0.0;  // same at s = floor(k/2) only
};

CollisionSummary summarize(const CountWeightTable& table);

/// Summaries for each requested k (any order), from one incremental pass.
std::vector<CollisionSummary> summaries(std::span<const int> ks);

/// Visits the table at every length 1..max_k in one pass.
void for_each_length(int max_k, const std::function<void(const CountWeightTable&)>& visit);

double collision_probability(int k);
double weighted_match_probability(int k);
double max_point_mass(int k);
double conditional_match_probability(int k);
/// Variant conditioning on the typical count s = floor(k/2).
double conditional_match_probability_typical(int k);
double count_match_probability(int k);

struct DyadicUniformity {
  std::int64_t support_size = 0;
  bool is_uniform = false;
  double lower_bound = 0.0;  // max(1, k/2 - 1)
};

/// Exact law of sum_{j < m} 2^j * bit(2^j), m = floor(log2 k), by integer
/// convolution; checks uniformity on {0, ..., 2^m - 1}.
DyadicUniformity dyadic_uniformity(std::int64_t k);

}  // namespace heislab
