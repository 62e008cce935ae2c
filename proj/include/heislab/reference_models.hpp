#pragma once

#include <cstdint>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "heislab/group.hpp"
#include "heislab/oriented_paths.hpp"

namespace heislab {

// ---- Oriented walks on Z^d ------------------------------------------------

/// Largest number of count vectors zd_collision_probability will enumerate.
inline constexpr std::uint64_t kMaxCompositions = 50'000'000;

/// Probability two independent uniform oriented paths in Z^d (each step a
/// uniformly chosen standard basis vector) are at the same point after k
/// steps: sum over count vectors c of (multinomial(k; c) / d^k)^2.
double zd_collision_probability(int d, int k);

/// The lazy difference walk of two oriented Z^d walks moves by e_i - e_j; it
/// holds with probability 1/d. A return is a visit to 0 after the walk has
/// left 0; holding at 0 is never a return.
struct ThetaEstimate {
  int d = 0;
  std::uint64_t horizon = 0;
  std::uint64_t samples = 0;
  std::uint64_t returns = 0;
  double theta_hat = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;   // 95% normal interval
  double ci_high = 0.0;  // 95% upper end plus censoring_bound
  /// Estimated mass of returns after the horizon, from first returns in
  /// (horizon/2, horizon] and the t^{-(d-1)/2} first-return tail.
  double censoring_bound = 0.0;
};

ThetaEstimate theta_d_estimate(int d, std::uint64_t horizon, std::uint64_t samples,
                               std::uint64_t seed, int threads = 1);

/// Exact probability that the difference walk returns within `horizon` steps,
/// by dynamic programming over displacement vectors (small horizons only).
double theta_d_exact_by_horizon(int d, int horizon);

/// Shared-edge (and vertex-coincidence) survivor statistics of two uniform
/// oriented paths in Z^d, from the difference walk: an edge is shared at step
/// t when the walks sit together and pick the same coordinate.
TailEstimate zd_eit_tail(int d, std::uint64_t horizon, std::uint64_t samples, std::uint64_t seed,
                         const TailOptions& options = {});

/// Edge-sharing survival ratio implied by the return probability theta_d: from
/// a common vertex the next edge is shared with probability 1/d, otherwise
/// the walks separate and meet again with probability theta_d.
double edge_ratio_from_theta(int d, double theta);

// ---- Simple random walk on the Heisenberg group ---------------------------

/// Sparse probability distribution over group elements.
struct SparseDistribution {
  absl::flat_hash_map<GroupElement, double> support;
  double pruned_mass = 0.0;  // mass discarded below the pruning threshold

  double total_mass() const;
  double at(const GroupElement& g) const;
};

inline constexpr int kDefaultSrwStepCap = 48;
inline constexpr double kSrwPruneThreshold = 1e-16;

/// Law of the simple random walk (uniform on a, a^-1, b, b^-1) after `steps`
/// sparse convolution steps. Throws CapExceededError when steps > cap.
SparseDistribution srw_distribution(int steps, int cap = kDefaultSrwStepCap);

/// P[walk is at the identity after n steps]. Odd n gives 0. For even n = 2m
/// the walk is symmetric, so P_{2m}(e) = sum_g P_m(g)^2 and only m <= cap
/// convolution steps are needed.
double srw_return_probability(int n, int cap = kDefaultSrwStepCap);

struct IntersectionPoint {
  std::uint64_t time = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean number of common vertices in the ranges of two independent simple
/// random walks from the identity, at t = 0 and t = N, 2N, 4N, ...
/// (`levels` checkpoints after 0).
std::vector<IntersectionPoint> srw_mutual_intersections(std::uint64_t base_time, int levels,
                                                        std::uint64_t samples, std::uint64_t seed,
                                                        int threads = 1);

}  // namespace heislab
