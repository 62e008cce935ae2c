#include "heislab/reference_models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include <absl/container/flat_hash_set.h>

#include "heislab/errors.hpp"
#include "heislab/parallel.hpp"
#include "heislab/rng.hpp"

namespace heislab {
namespace {

constexpr int kMaxDimension = 32;

void check_dimension(int d, int minimum) {
  if (d < minimum || d > kMaxDimension)
    throw std::invalid_argument("dimension d must lie in [" + std::to_string(minimum) + ", " +
                                std::to_string(kMaxDimension) + "]");
}

long double compositions(int d, int k) {
  // C(k + d - 1, d - 1)
  long double c = 1.0L;
  for (int i = 1; i < d; ++i) c = c * (k + i) / i;
  return c;
}

// Displacement of the lazy difference walk; tracks how many coordinates are
// nonzero so "at the origin" is O(1).
struct DifferenceWalk {
  std::array<std::int64_t, kMaxDimension> offset{};
  int nonzero = 0;

  void bump(int i, std::int64_t delta) {
    const bool was = offset[i] != 0;
    offset[i] += delta;
    nonzero += static_cast<int>(offset[i] != 0) - static_cast<int>(was);
  }
  // Returns true when the step moved the walk.
  bool step(int d, CounterRng& rng, int& first, int& second) {
    const auto r = rng.below(static_cast<std::uint64_t>(d) * d);
    first = static_cast<int>(r / d);
    second = static_cast<int>(r % d);
    if (first == second) return false;
    bump(first, +1);
    bump(second, -1);
    return true;
  }
  bool at_origin() const { return nonzero == 0; }
};

}  // namespace

double zd_collision_probability(int d, int k) {
  check_dimension(d, 1);
  if (k < 0) throw std::invalid_argument("zd_collision_probability: k must be >= 0");
  if (d == 1) return 1.0;
  if (compositions(d, k) > static_cast<long double>(kMaxCompositions))
    throw CapExceededError("zd_collision_probability: too many count vectors");
  std::vector<long double> log_factorial(static_cast<std::size_t>(k) + 1, 0.0L);
  for (int i = 2; i <= k; ++i) log_factorial[i] = log_factorial[i - 1] + std::log(static_cast<long double>(i));
  const long double base = log_factorial[k] - k * std::log(static_cast<long double>(d));
  long double total = 0.0L;
  std::vector<int> counts(static_cast<std::size_t>(d), 0);
  // Enumerate count vectors summing to k, last coordinate implied.
  auto recurse = [&](auto&& self, int index, int remaining, long double log_denominator) -> void {
    if (index == d - 1) {
      const long double log_p = base - log_denominator - log_factorial[remaining];
      total += std::exp(2.0L * log_p);
      return;
    }
    for (int c = 0; c <= remaining; ++c)
      self(self, index + 1, remaining - c, log_denominator + log_factorial[c]);
  };
  recurse(recurse, 0, k, 0.0L);
  return static_cast<double>(total);
}

ThetaEstimate theta_d_estimate(int d, std::uint64_t horizon, std::uint64_t samples,
                               std::uint64_t seed, int threads) {
  check_dimension(d, 4);
  if (horizon < 1) throw std::invalid_argument("theta_d_estimate: horizon must be >= 1");
  if (samples < 1) throw std::invalid_argument("theta_d_estimate: samples must be >= 1");
  const std::size_t blocks = block_count(samples);
  std::vector<std::uint64_t> returns(blocks, 0), late_returns(blocks, 0);
  const std::uint64_t window_start = horizon / 2;
  parallel_blocks(blocks, threads, [&](std::size_t block) {
    const std::uint64_t begin = block * kSamplesPerBlock;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kSamplesPerBlock);
    for (std::uint64_t s = begin; s < end; ++s) {
      auto rng = make_stream(seed, StreamFamily::DifferenceWalk, s);
      DifferenceWalk walk;
      bool left = false;
      int i, j;
      for (std::uint64_t t = 1; t <= horizon; ++t) {
        const bool moved = walk.step(d, rng, i, j);
        if (!left) {
          left = moved;
          continue;
        }
        if (walk.at_origin()) {
          ++returns[block];
          if (t > window_start) ++late_returns[block];
          break;
        }
      }
    }
  });
  ThetaEstimate out;
  out.d = d;
  out.horizon = horizon;
  out.samples = samples;
  std::uint64_t late = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    out.returns += returns[b];
    late += late_returns[b];
  }
  const double n = static_cast<double>(samples);
  out.theta_hat = static_cast<double>(out.returns) / n;
  out.std_error = std::sqrt(out.theta_hat * (1.0 - out.theta_hat) / n);
  const double gamma = (d - 1) / 2.0;
  const double late_fraction = static_cast<double>(late) / n;
  out.censoring_bound = gamma > 1.0 ? late_fraction / (std::pow(2.0, gamma - 1.0) - 1.0) : INFINITY;
  out.ci_low = std::max(0.0, out.theta_hat - 1.96 * out.std_error);
  out.ci_high = std::min(1.0, out.theta_hat + 1.96 * out.std_error + out.censoring_bound);
  return out;
}

double theta_d_exact_by_horizon(int d, int horizon) {
  check_dimension(d, 2);
  if (horizon < 0) throw std::invalid_argument("theta_d_exact_by_horizon: horizon must be >= 0");
  if (horizon > 24) throw CapExceededError("theta_d_exact_by_horizon: horizon too large");
  const double step_p = 1.0 / (static_cast<double>(d) * d);
  double at_start = 1.0;  // still at 0, never moved
  double returned = 0.0;
  std::map<std::vector<int>, double> away;
  for (int t = 0; t < horizon; ++t) {
    std::map<std::vector<int>, double> next;
    for (const auto& [offset, p] : away) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (i == j) {
            next[offset] += p * step_p;
            continue;
          }
          auto moved = offset;
          ++moved[i];
          --moved[j];
          if (std::all_of(moved.begin(), moved.end(), [](int v) { return v == 0; }))
            returned += p * step_p;
          else
            next[moved] += p * step_p;
        }
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        std::vector<int> moved(static_cast<std::size_t>(d), 0);
        ++moved[i];
        --moved[j];
        next[moved] += at_start * step_p;
      }
    at_start /= d;
    away.swap(next);
  }
  return returned;
}

double edge_ratio_from_theta(int d, double theta) {
  const double same = 1.0 / d;
  return same / (1.0 - (1.0 - same) * theta);
}

TailEstimate zd_eit_tail(int d, std::uint64_t horizon, std::uint64_t samples, std::uint64_t seed,
                         const TailOptions& options) {
  check_dimension(d, 4);
  if (horizon < 1) throw std::invalid_argument("zd_eit_tail: horizon must be >= 1");
  if (samples < 1) throw std::invalid_argument("zd_eit_tail: samples must be >= 1");
  const std::size_t blocks = block_count(samples);
  std::vector<std::vector<std::uint64_t>> edge_parts(blocks), vertex_parts(blocks);
  auto add = [](std::vector<std::uint64_t>& h, std::size_t v) {
    if (h.size() <= v) h.resize(v + 1, 0);
    ++h[v];
  };
  parallel_blocks(blocks, options.threads, [&](std::size_t block) {
    const std::uint64_t begin = block * kSamplesPerBlock;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kSamplesPerBlock);
    for (std::uint64_t s = begin; s < end; ++s) {
      auto rng = make_stream(seed, StreamFamily::ZdTail, s);
      DifferenceWalk walk;
      std::size_t edges = 0, vertices = 0;
      int i, j;
      for (std::uint64_t t = 0; t < horizon; ++t) {
        const bool together = walk.at_origin();
        const bool moved = walk.step(d, rng, i, j);
        if (together && !moved) ++edges;
        if (walk.at_origin()) ++vertices;
      }
      add(edge_parts[block], edges);
      add(vertex_parts[block], vertices);
    }
  });
  std::vector<std::uint64_t> edge_histogram, vertex_histogram;
  for (std::size_t b = 0; b < blocks; ++b) {
    if (edge_histogram.size() < edge_parts[b].size()) edge_histogram.resize(edge_parts[b].size(), 0);
    for (std::size_t v = 0; v < edge_parts[b].size(); ++v) edge_histogram[v] += edge_parts[b][v];
    if (vertex_histogram.size() < vertex_parts[b].size())
      vertex_histogram.resize(vertex_parts[b].size(), 0);
    for (std::size_t v = 0; v < vertex_parts[b].size(); ++v) vertex_histogram[v] += vertex_parts[b][v];
  }
  // Coincidence probability decays like t^{-gamma}; extrapolate the exact
  // value at a tractable length to the horizon and sum the tail.
  const double gamma = (d - 1) / 2.0;
  double censoring = INFINITY;
  if (gamma > 1.0) {
    int anchor = static_cast<int>(std::min<std::uint64_t>(horizon, 256));
    while (anchor > 1 && compositions(d, anchor) > 1e6L) anchor /= 2;
    const double p_anchor = zd_collision_probability(d, anchor);
    const double h = static_cast<double>(horizon);
    const double p_h = p_anchor * std::pow(h / anchor, -gamma);
    censoring = p_h * h / (gamma - 1.0);
  }
  return make_tail_estimate(horizon, samples, edge_histogram, vertex_histogram, options.min_count,
                            censoring);
}

double SparseDistribution::total_mass() const {
  double total = 0.0;
  for (const auto& [g, p] : support) total += p;
  return total;
}

double SparseDistribution::at(const GroupElement& g) const {
  auto it = support.find(g);
  return it == support.end() ? 0.0 : it->second;
}

SparseDistribution srw_distribution(int steps, int cap) {
  if (steps < 0) throw std::invalid_argument("srw_distribution: steps must be >= 0");
  if (steps > cap)
    throw CapExceededError("srw_distribution: " + std::to_string(steps) + " steps exceeds cap " +
                           std::to_string(cap));
  SparseDistribution dist;
  dist.support.emplace(kIdentity, 1.0);
  for (int t = 0; t < steps; ++t) {
    absl::flat_hash_map<GroupElement, double> next;
    next.reserve(dist.support.size() * 2);
    for (const auto& [g, p] : dist.support)
      for (Generator s : kAllGenerators) next[apply_generator(g, s)] += 0.25 * p;
    for (auto it = next.begin(); it != next.end();) {
      if (it->second < kSrwPruneThreshold) {
        dist.pruned_mass += it->second;
        next.erase(it++);
      } else {
        ++it;
      }
    }
    dist.support.swap(next);
  }
  return dist;
}

double srw_return_probability(int n, int cap) {
  if (n < 0) throw std::invalid_argument("srw_return_probability: n must be >= 0");
  if (n % 2 == 1) return 0.0;
  const auto half = srw_distribution(n / 2, cap);
  // Symmetric step law: P_m(g^{-1}) = P_m(g).
  double total = 0.0;
  for (const auto& [g, p] : half.support) total += p * p;
  return total;
}

std::vector<IntersectionPoint> srw_mutual_intersections(std::uint64_t base_time, int levels,
                                                        std::uint64_t samples, std::uint64_t seed,
                                                        int threads) {
  if (base_time < 1) throw std::invalid_argument("srw_mutual_intersections: base time must be >= 1");
  if (levels < 1 || levels > 16) throw std::invalid_argument("srw_mutual_intersections: levels in [1, 16]");
  if (samples < 1) throw std::invalid_argument("srw_mutual_intersections: samples must be >= 1");
  std::vector<std::uint64_t> checkpoints;
  for (int l = 0; l < levels; ++l) checkpoints.push_back(base_time << l);
  const std::uint64_t total_time = checkpoints.back();
  const std::size_t blocks = block_count(samples);
  // Per block: sums and sums of squares of the intersection count.
  std::vector<std::vector<std::uint64_t>> sums(blocks, std::vector<std::uint64_t>(levels, 0));
  std::vector<std::vector<std::uint64_t>> squares(blocks, std::vector<std::uint64_t>(levels, 0));
  parallel_blocks(blocks, threads, [&](std::size_t block) {
    const std::uint64_t begin = block * kSamplesPerBlock;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kSamplesPerBlock);
    for (std::uint64_t s = begin; s < end; ++s) {
      auto rng_a = make_stream(seed, StreamFamily::SimpleWalk, 2 * s);
      auto rng_b = make_stream(seed, StreamFamily::SimpleWalk, 2 * s + 1);
      absl::flat_hash_set<GroupElement> range_a{kIdentity}, range_b{kIdentity};
      GroupElement a = kIdentity, b = kIdentity;
      std::uint64_t common = 1;
      int level = 0;
      for (std::uint64_t t = 1; t <= total_time; ++t) {
        a = apply_generator(a, kAllGenerators[rng_a.below(4)]);
        if (range_a.insert(a).second && range_b.contains(a)) ++common;
        b = apply_generator(b, kAllGenerators[rng_b.below(4)]);
        if (range_b.insert(b).second && range_a.contains(b)) ++common;
        if (t == checkpoints[level]) {
          sums[block][level] += common;
          squares[block][level] += common * common;
          ++level;
        }
      }
    }
  });
  std::vector<IntersectionPoint> out{{0, 1.0, 0.0}};
  const double n = static_cast<double>(samples);
  for (int l = 0; l < levels; ++l) {
    std::uint64_t sum = 0, sq = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      sum += sums[b][l];
      sq += squares[b][l];
    }
    const double mean = static_cast<double>(sum) / n;
    const double variance = std::max(0.0, static_cast<double>(sq) / n - mean * mean);
    out.push_back({checkpoints[l], mean, std::sqrt(variance / std::max(1.0, n - 1.0))});
  }
  return out;
}

}  // namespace heislab
