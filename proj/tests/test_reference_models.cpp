#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "heislab/errors.hpp"
#include "heislab/exact_oracle.hpp"
#include "heislab/fit.hpp"
#include "heislab/reference_models.hpp"
#include "support/brute_force.hpp"

using namespace heislab;

namespace {

// C(2k,k) / 4^k with an exact integer binomial.
double central_binomial_over_four_power(int k) {
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) c = c * (k + i) / i;
  return static_cast<double>(static_cast<long double>(c) / std::ldexp(1.0L, 2 * k));
}

// Endpoint law of all d^k oriented paths in Z^d.
double zd_collision_by_enumeration(int d, int k) {
  std::map<std::vector<int>, std::uint64_t> endpoints;
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= d;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<int> point(d, 0);
    for (std::uint64_t c = code, i = 0; i < static_cast<std::uint64_t>(k); ++i, c /= d) ++point[c % d];
    ++endpoints[point];
  }
  long double sum = 0;
  for (const auto& [p, c] : endpoints) sum += static_cast<long double>(c) * c;
  return static_cast<double>(sum / (static_cast<long double>(total) * total));
}

// Probability that the difference of two oriented Z^d walks returns to 0
// within `horizon` steps after leaving it, by listing every pair of step
// sequences.
double return_by_enumeration(int d, int horizon) {
  std::uint64_t total = 1;
  for (int i = 0; i < horizon; ++i) total *= static_cast<std::uint64_t>(d * d);
  std::uint64_t hits = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<int> diff(d, 0);
    bool left = false;
    std::uint64_t c = code;
    for (int t = 0; t < horizon; ++t, c /= d * d) {
      const int i = static_cast<int>(c % (d * d)) / d, j = static_cast<int>(c % (d * d)) % d;
      ++diff[i];
      --diff[j];
      const bool zero = std::all_of(diff.begin(), diff.end(), [](int x) { return x == 0; });
      if (!zero) left = true;
      if (zero && left) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("Z^d collision examples") {
  for (int k : {1, 5, 50}) CHECK(zd_collision_probability(1, k) == 1.0);
  for (int k = 1; k <= 30; ++k) {
    const double closed = central_binomial_over_four_power(k);
    CAPTURE(k);
    CHECK(std::abs(zd_collision_probability(2, k) - closed) <= 1e-13 * closed);
  }
  CHECK(zd_collision_probability(3, 7) == doctest::Approx(zd_collision_by_enumeration(3, 7)).epsilon(1e-13));
  CHECK(zd_collision_probability(4, 6) == doctest::Approx(zd_collision_by_enumeration(4, 6)).epsilon(1e-13));
  CHECK_THROWS_AS(zd_collision_probability(0, 3), std::invalid_argument);
}

TEST_CASE("Z^d collision decreases in k and d") {
  for (int d = 2; d <= 5; ++d)
    for (int k = 1; k < 40; ++k) {
      CAPTURE(d);
      CAPTURE(k);
      CHECK(zd_collision_probability(d, k + 1) < zd_collision_probability(d, k));
      CHECK(zd_collision_probability(d + 1, k) < zd_collision_probability(d, k));
    }
}

TEST_CASE("Z^4 slope and contrast with the Heisenberg group") {
  const std::vector<int> ks{16, 32, 64, 128};
  std::vector<double> x, z4, gh;
  const auto exact = summaries(ks);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    x.push_back(ks[i]);
    z4.push_back(zd_collision_probability(4, ks[i]));
    gh.push_back(exact[i].collision);
  }
  const double z4_slope = fit_log_log(x, z4).slope;
  const double gh_slope = fit_log_log(x, gh).slope;
  CHECK(std::abs(z4_slope + 1.5) <= 0.2);
  CHECK(std::abs((z4_slope - gh_slope) - 0.5) <= 0.25);
}

TEST_CASE("exact return probability by horizon") {
  CHECK(theta_d_exact_by_horizon(4, 1) == 0.0);
  for (int h = 1; h <= 4; ++h) {
    CAPTURE(h);
    CHECK(theta_d_exact_by_horizon(4, h) == doctest::Approx(return_by_enumeration(4, h)).epsilon(1e-12));
  }
  CHECK(theta_d_exact_by_horizon(5, 3) == doctest::Approx(return_by_enumeration(5, 3)).epsilon(1e-12));
  double previous = 0.0;
  for (int h = 1; h <= 16; ++h) {
    const double value = theta_d_exact_by_horizon(4, h);
    CHECK(value >= previous);
    previous = value;
  }
}

TEST_CASE("theta estimate") {
  const auto one = theta_d_estimate(4, 1, 1000, 3);
  CHECK(one.returns == 0);
  CHECK(one.theta_hat == 0.0);

  const auto small = theta_d_estimate(4, 8, 100000, 4, 2);
  const double exact = theta_d_exact_by_horizon(4, 8);
  CHECK(std::abs(small.theta_hat - exact) <= 4 * std::sqrt(exact * (1 - exact) / 100000));

  double previous = -1.0;
  for (std::uint64_t h : {2u, 8u, 32u, 128u, 512u}) {
    const auto est = theta_d_estimate(4, h, 20000, 9);
    CHECK(est.theta_hat >= previous);
    CHECK(est.ci_low <= est.theta_hat);
    CHECK(est.ci_high >= est.theta_hat + est.censoring_bound);
    CHECK(est.censoring_bound >= 0.0);
    previous = est.theta_hat;
  }
  CHECK_THROWS_AS(theta_d_estimate(3, 10, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(zd_eit_tail(3, 10, 10, 1), std::invalid_argument);
}

TEST_CASE("Z^4 shared-edge tail") {
  const auto tail = zd_eit_tail(4, 2000, 40000, 21);
  CHECK(tail.counts.at(0) == tail.samples);
  for (std::size_t n = 1; n < tail.counts.size(); ++n) CHECK(tail.counts[n] <= tail.counts[n - 1]);
  const auto renewal = check_renewal(tail.counts, 50, 3.0);
  CHECK(renewal.pass);

  // 95% interval for the pooled edge ratio against the ratio implied by the
  // return-probability interval.
  std::uint64_t at_risk = 0;
  for (std::size_t n : renewal.n) at_risk += tail.counts[n];
  const double h = renewal.pooled;
  const double half = 1.96 * std::sqrt(h * (1 - h) / static_cast<double>(at_risk));
  const auto theta = theta_d_estimate(4, 2000, 40000, 22);
  const double lo = edge_ratio_from_theta(4, theta.ci_low);
  const double hi = edge_ratio_from_theta(4, theta.ci_high);
  CHECK(h + half >= lo);
  CHECK(h - half <= hi);
  CHECK(edge_ratio_from_theta(4, 0.0) == 0.25);
}

TEST_CASE("SRW return probability examples") {
  CHECK(srw_return_probability(0) == 1.0);
  CHECK(srw_return_probability(1) == 0.0);
  CHECK(srw_return_probability(2) == 0.25);
  CHECK(srw_return_probability(7) == 0.0);
  CHECK_THROWS_AS(srw_return_probability(2 * kDefaultSrwStepCap + 2), CapExceededError);
  CHECK_THROWS_AS(srw_distribution(kDefaultSrwStepCap + 1), CapExceededError);
}

TEST_CASE("SRW return probability equals word enumeration") {
  for (int n = 0; n <= 10; n += 2) {
    std::uint64_t words = std::uint64_t{1} << (2 * n), home = 0;
    std::vector<Generator> word(n);
    for (std::uint64_t code = 0; code < words; ++code) {
      for (int i = 0; i < n; ++i) word[i] = kAllGenerators[(code >> (2 * i)) & 3U];
      home += word_eval(word) == kIdentity;
    }
    CAPTURE(n);
    CHECK(srw_return_probability(n) == doctest::Approx(double(home) / double(words)).epsilon(1e-14));
  }
  for (int n = 0; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(srw_return_probability(n) ==
          doctest::Approx(srw_distribution(n).at(kIdentity)).epsilon(1e-12));
  }
}

TEST_CASE("SRW distribution conserves mass") {
  for (int n : {0, 1, 5, 12, 20, 30}) {
    const auto dist = srw_distribution(n);
    CAPTURE(n);
    CHECK(std::abs(dist.total_mass() + dist.pruned_mass - 1.0) <= 1e-9);
    CHECK(dist.total_mass() <= 1.0 + 1e-12);
    for (const auto& [g, p] : dist.support) REQUIRE(p > 0.0);
  }
}

TEST_CASE("SRW return slope") {
  std::vector<double> x, y;
  for (int n : {8, 12, 16, 20, 24}) {
    x.push_back(n);
    y.push_back(srw_return_probability(2 * n));
  }
  CHECK(std::abs(fit_log_log(x, y).slope + 2.0) <= 0.3);
}

TEST_CASE("SRW mutual intersections keep growing") {
  const auto points = srw_mutual_intersections(64, 3, 2000, 5);
  REQUIRE(points.size() == 4);
  CHECK(points[0].time == 0);
  CHECK(points[0].mean == 1.0);
  CHECK(points[1].time == 64);
  CHECK(points[2].time == 128);
  CHECK(points[3].time == 256);
  for (std::size_t i = 1; i < points.size(); ++i) CHECK(points[i].mean >= points[i - 1].mean);
  const double se = std::hypot(points[1].std_error, points[3].std_error);
  CHECK(points[3].mean - points[1].mean > 3 * se);
}
