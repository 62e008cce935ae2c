#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "heislab/fit.hpp"
#include "heislab/group.hpp"
#include "heislab/rng.hpp"

namespace heislab {

/// Finite oriented path from the identity: bit j = 0 is an A-edge, bit j = 1
/// a B-edge.
class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(std::vector<std::uint8_t> bits);
  /// Parses a string of '0'/'1' characters.
  static BitWord from_string(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t j) const { return bits_[j]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<Generator> to_generators() const;

  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// k i.i.d. fair bits drawn from the stream.
BitWord sample_word(std::size_t k, CounterRng& stream);

/// Vertex reached after t steps. x counts zeros, y counts ones and the
/// central coordinate is minus the sum, over zero-bits j < t, of the number
/// of ones before j. Throws std::out_of_range when t > size.
GroupElement position(const BitWord& w, std::size_t t);

/// Number of ones among bits 0..t-1.
std::int64_t ones_count(const BitWord& w, std::size_t t);

/// Sum over j < t of j * bit(j).
std::int64_t weighted_sum(const BitWord& w, std::size_t t);

/// position(u, t) == position(v, t).
bool coincides(const BitWord& u, const BitWord& v, std::size_t t);

/// Number of indices t with coincides(u, v, t) and u[t] == v[t]: the edges
/// the two paths have in common. Equal lengths required.
std::size_t shared_edges(const BitWord& u, const BitWord& v);

/// Number of t in 1..k with coincides(u, v, t). Equal lengths required.
std::size_t vertex_coincidences(const BitWord& u, const BitWord& v);

/// Survivor counts of the intersection statistics of independent path pairs.
struct TailEstimate {
  std::size_t horizon = 0;
  std::uint64_t samples = 0;
  /// counts[n] = pairs sharing >= n edges; counts[0] == samples.
  std::vector<std::uint64_t> counts;
  /// vertex_counts[n] = pairs with >= n vertex coincidences at times >= 1.
  std::vector<std::uint64_t> vertex_counts;
  /// Binomial standard error of counts[n] / samples.
  std::vector<double> std_errors;
  /// exp(slope) of log counts(n) over the admissible range n >= 1.
  std::optional<double> theta_hat;
  std::optional<LinearFit> fit;
  std::size_t fit_first = 0;
  std::size_t fit_last = 0;
  /// Bound on probability mass lost to truncating paths at the horizon.
  double censoring_bound = 0.0;
};

struct TailOptions {
  std::uint64_t min_count = 50;
  int threads = 1;
};

TailEstimate tail_estimate(std::size_t horizon, std::uint64_t samples, std::uint64_t seed,
                           const TailOptions& options = {});

/// Builds a TailEstimate (survivor counts, errors, fit) from per-pair
/// statistics histograms. Shared with the lattice reference model.
TailEstimate make_tail_estimate(std::size_t horizon, std::uint64_t samples,
                                const std::vector<std::uint64_t>& edge_histogram,
                                const std::vector<std::uint64_t>& vertex_histogram,
                                std::uint64_t min_count, double censoring_bound);

/// Least-squares line through log counts[n] for n in [first, last].
LinearFit fit_log_survivor(const std::vector<std::uint64_t>& counts, std::size_t first,
                           std::size_t last);

/// Constancy of the conditional survival P[N >= n+1 | N >= n].
struct RenewalCheck {
  std::vector<std::size_t> n;
  std::vector<double> hazard;
  std::vector<double> std_error;
  double pooled = 0.0;
  double worst_z = 0.0;
  bool pass = false;
};

/// Compares each conditional survival ratio (for n with counts[n] >=
/// min_count) against the pooled ratio; passes when every deviation is within
/// z_limit binomial standard errors.
RenewalCheck check_renewal(const std::vector<std::uint64_t>& counts, std::uint64_t min_count,
                           double z_limit);

struct CollisionFrequency {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double frequency = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo frequency that two independent uniform paths occupy the same
/// vertex at step k.
CollisionFrequency collision_frequency(std::size_t k, std::uint64_t samples, std::uint64_t seed,
                                       int threads = 1);

}  // namespace heislab
