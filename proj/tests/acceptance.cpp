// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "heislab/exact_oracle.hpp"
#include "heislab/fit.hpp"
#include "heislab/group.hpp"
#include "heislab/oriented_paths.hpp"
#include "heislab/percolation.hpp"
#include "heislab/reference_models.hpp"
#include "heislab/spectral.hpp"
#include "support/brute_force.hpp"

using namespace heislab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += ok ? what : "FAILED " + what;
  }
};

const int kThreads = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
const Point kOrigin{0, 0, 0, 0};

double slope(const std::vector<int>& xs, const std::vector<double>& ys) {
  return fit_log_log(std::vector<double>(xs.begin(), xs.end()), ys).slope;
}

Outcome point_mass_bound() {
  Outcome o;
  int worst_k = 0;
  double worst = -1.0;
  bool ok = true;
  for_each_length(256, [&](const CountWeightTable& table) {
    const int k = table.length();
    if (k < 2) return;
    const auto s = summarize(table);
    const double excess = std::max(s.max_point_mass, s.weighted_match) - 1.0 / k;
    ok = ok && excess <= 1e-12;
    if (excess > worst || worst_k == 0) worst = excess, worst_k = k;
  });
  o.require(ok, fmt::format("max(point mass, weighted match) - 1/k <= {:.3g} (k={}) over k in [2,256]",
                            worst, worst_k));
  return o;
}

Outcome gh_rate() {
  Outcome o;
  const std::vector<int> ks{32, 64, 128, 256};
  std::vector<double> p;
  for (const auto& s : summaries(ks)) p.push_back(s.collision);
  const double b = slope(ks, p);
  o.require(b >= -2.2 && b <= -1.8, fmt::format("collision slope {:.4f} in [-2.2,-1.8]", b));
  return o;
}

Outcome z4_rate() {
  Outcome o;
  const std::vector<int> ks{16, 32, 64, 128};
  std::vector<double> z4, gh;
  for (int k : ks) z4.push_back(zd_collision_probability(4, k));
  for (const auto& s : summaries(ks)) gh.push_back(s.collision);
  const double bz = slope(ks, z4), bg = slope(ks, gh);
  o.require(bz >= -1.7 && bz <= -1.3, fmt::format("Z^4 slope {:.4f} in [-1.7,-1.3]", bz));
  o.require(std::abs(bz - bg - 0.5) <= 0.25,
            fmt::format("difference to G_H slope {:.4f} on the same k is {:.4f} in 0.5 +/- 0.25", bg,
                        bz - bg));
  return o;
}

Outcome conditional_rate() {
  Outcome o;
  const std::vector<int> ks{32, 64, 128, 256};
  std::vector<double> p, typical;
  for (const auto& s : summaries(ks)) {
    p.push_back(s.conditional_match);
    typical.push_back(s.conditional_match_typical);
  }
  const double b = slope(ks, p);
  o.require(b >= -1.7 && b <= -1.3, fmt::format("conditional slope {:.4f} in [-1.7,-1.3]", b));
  o.detail += fmt::format(" (typical-count variant {:.4f})", slope(ks, typical));
  return o;
}

Outcome count_match() {
  Outcome o;
  const double scaled = std::sqrt(256.0) * count_match_probability(256);
  const double limit = 1.0 / std::sqrt(std::numbers::pi);
  const double rel = std::abs(scaled / limit - 1.0);
  o.require(rel <= 0.02, fmt::format("sqrt(256) p = {:.6f} vs {:.6f}, relative gap {:.4f}", scaled,
                                     limit, rel));
  return o;
}

Outcome brute_force() {
  Outcome o;
  std::vector<int> ks;
  for (int k = 1; k <= 14; ++k) ks.push_back(k);
  const auto all = summaries(ks);
  bool ok = true;
  for (int k = 1; k <= 14; ++k) {
    const auto& s = all[k - 1];
    const double words2 = std::ldexp(1.0, 2 * k);
    const auto endpoints = testing::endpoint_counts(k);
    const auto weights = testing::weight_counts(k);
    const auto joint = testing::count_weight_counts(k);
    std::map<std::int64_t, std::uint64_t> by_count;
    for (const auto& [sw, c] : joint) by_count[sw.first] += c;
    long double conditional = 0;
    for (const auto& [sw, c] : joint)
      conditional += static_cast<long double>(c) * c / (by_count[sw.first] * std::ldexp(1.0L, k));
    ok = ok && s.collision == testing::sum_of_squares(endpoints) / words2;
    ok = ok && s.weighted_match == testing::sum_of_squares(weights) / words2;
    ok = ok && s.count_match == testing::sum_of_squares(by_count) / words2;
    ok = ok && s.max_point_mass == testing::max_count(weights) / std::ldexp(1.0, k);
    ok = ok && std::abs(s.conditional_match - static_cast<double>(conditional)) <= 1e-15;
  }
  o.require(ok, "DP equals enumeration of all 2^k words for k <= 14");
  const bool spots = all[0].collision == 0.5 && all[1].collision == 0.25 &&
                     all[2].collision == 0.125 && all[3].collision == 9.0 / 128;
  o.require(spots, "p1..p4 = 1/2, 1/4, 1/8, 9/128");
  return o;
}

Outcome fourier_chain() {
  Outcome o;
  const double i1 = cos_product_integral(1).value, i2 = cos_product_integral(2).value;
  o.require(std::abs(i1 - 2 * std::numbers::pi) <= 1e-8 && std::abs(i2 - 4.0) <= 1e-8,
            fmt::format("I(1) = {:.12f}, I(2) = {:.12f}", i1, i2));
  std::vector<double> scaled;
  for (int k : {16, 64, 256, 1024}) scaled.push_back(cos_product_integral(k).value * std::pow(k, 1.5));
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  o.require(*hi / *lo < 2.5, fmt::format("k^1.5 I(k) in [{:.3f}, {:.3f}], ratio {:.3f} < 2.5", *lo,
                                         *hi, *hi / *lo));
  o.require(verify_cos_gaussian_bound(0.5, 100000), "|cos x| <= exp(-x^2/2) on 1e5 grid points");
  const double drop =
      std::log(tail_integral_decay(64).integral.value) - std::log(tail_integral_decay(32).integral.value);
  o.require(drop < -1.0, fmt::format("log tail(64) - log tail(32) = {:.3f} < -1", drop));
  double worst = 0.0;
  for_each_length(64, [&](const CountWeightTable& table) {
    const auto exact = table.weight_marginal();
    const auto inverted = point_masses_via_inversion(table.length());
    for (std::size_t n = 0; n < exact.size(); ++n) worst = std::max(worst, std::abs(exact[n] - inverted[n]));
  });
  o.require(worst <= 1e-6, fmt::format("inversion vs DP max gap {:.2g} for k <= 64", worst));
  return o;
}

Outcome dyadic() {
  Outcome o;
  for (int k : {4, 8, 16, 31, 256, 1000}) {
    const auto d = dyadic_uniformity(k);
    o.require(d.is_uniform && d.support_size >= k / 2.0 - 1,
              fmt::format("k={} support {} uniform={}", k, d.support_size, d.is_uniform));
  }
  return o;
}

Outcome eit_tail() {
  Outcome o;
  TailOptions options;
  options.threads = kThreads;
  const auto est = tail_estimate(4096, 100000, 20240101, options);
  const bool enough = est.counts.size() > 10 && est.counts[10] > 0;
  o.require(enough, fmt::format("counts(10) = {}", enough ? est.counts[10] : 0));
  if (!enough) return o;
  const auto fit = fit_log_survivor(est.counts, 1, 10);
  o.require(fit.r_squared >= 0.98,
            fmt::format("log survivor on n in [1,10]: R^2 {:.5f}, theta {:.4f}", fit.r_squared,
                        std::exp(fit.slope)));
  const auto edges = check_renewal(est.counts, 50, 3.0);
  const auto vertices = check_renewal(est.vertex_counts, 50, 3.0);
  o.require(edges.pass, fmt::format("edge hazard constant, worst z {:.2f}", edges.worst_z));
  o.require(vertices.pass, fmt::format("vertex hazard constant, worst z {:.2f}", vertices.worst_z));
  return o;
}

Outcome srw_return() {
  Outcome o;
  const std::vector<int> ns{8, 16, 24, 32, 40, 48};
  std::vector<double> p;
  for (int n : ns) p.push_back(srw_return_probability(2 * n));
  const double b = slope(ns, p);
  o.require(b >= -2.3 && b <= -1.7, fmt::format("log P(2n) slope {:.4f} in [-2.3,-1.7]", b));
  return o;
}

Outcome ball_growth() {
  Outcome o;
  const auto sizes = ball_sizes(32);
  const std::vector<int> rs{8, 12, 16, 20, 24, 28, 32};
  std::vector<double> v;
  for (int r : rs) v.push_back(static_cast<double>(sizes[r]));
  const double b = slope(rs, v);
  o.require(b >= 3.7 && b <= 4.3, fmt::format("ball slope {:.4f} in [3.7,4.3]", b));
  const auto w1 = testing::ball_by_words(1).size(), w2 = testing::ball_by_words(2).size();
  o.require(sizes[1] == 5 && sizes[2] == 17 && w1 == 5 && w2 == 17,
            fmt::format("|B(1)| = {}, |B(2)| = {} (word enumeration {}, {})", sizes[1], sizes[2], w1, w2));
  return o;
}

Outcome resistance() {
  Outcome o;
  using Edges = std::vector<std::pair<std::int32_t, std::int32_t>>;
  auto solve = [](std::size_t n, Edges e, std::int32_t sink) {
    const std::vector<std::int32_t> sinks{sink};
    return solve_resistance({n, std::move(e)}, 0, sinks).resistance;
  };
  const bool hand = std::abs(solve(2, {{0, 1}}, 1) - 1.0) <= 1e-8 &&
                    std::abs(solve(2, {{0, 1}, {0, 1}}, 1) - 0.5) <= 1e-8 &&
                    std::abs(solve(3, {{0, 1}, {1, 2}}, 2) - 2.0) <= 1e-8 &&
                    std::abs(solve(5, {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}}, 4) - 1.2) <= 1e-8 &&
                    std::abs(solve(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}, 3) - 1.0) <= 1e-8 &&
                    std::abs(solve(4, {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}, {1, 2}}, 3) -
                             5.0 / 7) <= 1e-8;
  o.require(hand, "series/parallel/bridge networks to 1e-8");

  const auto box = std::make_shared<const LatticeBox>(Lattice::heisenberg(), 8);
  bool rayleigh = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    double previous = std::numeric_limits<double>::infinity();
    for (double p : {0.6, 0.8, 0.95, 1.0}) {
      const double r = effective_resistance(percolate_box(box, p, seed), kOrigin, 8).resistance;
      rayleigh = rayleigh && r <= previous + 1e-9;
      previous = r;
    }
  }
  o.require(rayleigh, "Rayleigh monotone over p = 0.6, 0.8, 0.95, 1 for 5 coupled seeds");

  const std::vector<int> square_radii{4, 8, 16, 32};
  const std::vector<std::uint64_t> one{1};
  const auto square = resistance_profile(Lattice::integer(2), 1.0, square_radii, one);
  std::vector<double> logs;
  for (int r : square_radii) logs.push_back(std::log(r));
  const double zslope = fit_line(logs, square.mean_resistance).slope;
  o.require(zslope > 0.1, fmt::format("Z^2 slope vs log R {:.4f} > 0.1", zslope));

  const std::vector<int> radii{4, 8, 12, 16};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  for (double p : {1.0, 0.95}) {
    const auto profile = resistance_profile(Lattice::heisenberg(), p, radii, seeds, kThreads);
    std::vector<double> inc;
    for (std::size_t i = 1; i < radii.size(); ++i)
      inc.push_back(profile.mean_resistance[i] - profile.mean_resistance[i - 1]);
    bool decreasing = true;
    for (std::size_t i = 1; i < inc.size(); ++i) decreasing = decreasing && inc[i] < inc[i - 1];
    const int connected = *std::min_element(profile.connected_seeds.begin(), profile.connected_seeds.end());
    o.require(decreasing && connected >= 1,
              fmt::format("G_H p={} increments {:.4f}, {:.4f}, {:.4f} decreasing ({} of 5 seeds connected)",
                          p, inc[0], inc[1], inc[2], connected));
  }
  return o;
}

Outcome thomson() {
  Outcome o;
  for (int r : {2, 4, 8, 12, 16}) {
    const auto mask = percolate_box(Lattice::heisenberg(), r, 1.0, 1);
    const auto flow = path_flow_energy(mask, 20000, 7);
    const auto reff = effective_resistance(mask, kOrigin, r);
    o.require(reff.resistance <= flow.energy + 1e-9 && flow.flow.max_divergence_error() <= 1e-9,
              fmt::format("R={} R_eff {:.4f} <= energy {:.4f}", r, reff.resistance, flow.energy));
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "point-mass bound 1/k", 120, point_mass_bound},
      {2, "G_H collision rate", 120, gh_rate},
      {3, "Z^4 collision rate and contrast", 120, z4_rate},
      {4, "conditional match rate", 120, conditional_rate},
      {5, "count match constant", 120, count_match},
      {6, "brute-force equivalence", 120, brute_force},
      {7, "Fourier chain", 300, fourier_chain},
      {8, "dyadic uniformity", 120, dyadic},
      {9, "intersection tail", 600, eit_tail},
      {10, "SRW return rate", 300, srw_return},
      {11, "ball growth", 120, ball_growth},
      {12, "resistance mechanics", 600, resistance},
      {13, "Thomson consistency", 300, thomson},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.require(seconds <= c.budget_seconds,
                    fmt::format("runtime {:.1f}s <= {:.0f}s", seconds, c.budget_seconds));
    failures += !outcome.pass;
    fmt::print("{} criterion {:>2} ({}): {}\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
               outcome.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
