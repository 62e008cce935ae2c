#include "heislab/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "heislab/errors.hpp"
#include "heislab/exact_oracle.hpp"
#include "heislab/group.hpp"
#include "heislab/oriented_paths.hpp"
#include "heislab/percolation.hpp"
#include "heislab/reference_models.hpp"
#include "heislab/spectral.hpp"

namespace heislab::harness {
namespace {

std::vector<int> list_or(const std::optional<std::vector<int>>& list, std::vector<int> fallback) {
  return list ? *list : std::move(fallback);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_each(const std::vector<int>& values, int minimum, const std::string& what) {
  for (int v : values)
    require(v >= minimum, fmt::format("{} entries must be >= {}, got {}", what, minimum, v));
}

void require_increasing(const std::vector<int>& values, const std::string& what) {
  for (std::size_t i = 1; i < values.size(); ++i)
    require(values[i] > values[i - 1], what + " must be strictly increasing");
}

void add_loglog_fit(ExperimentOutput& out, const std::string& claim_id, const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (x.size() < 2) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0 && y[i] > 0.0)) return;
  out.fits.push_back({claim_id, fit_log_log(x, y), x});
}

// ---- exact oracle --------------------------------------------------------

const std::vector<int> kDefaultCollisionKs{32, 64, 128, 256};

void validate_table_ks(const std::vector<int>& ks) {
  require_each(ks, 1, "k-list");
  for (int k : ks)
    if (k > max_table_length())
      throw CapExceededError(fmt::format("k = {} exceeds the table cap {} (set HEISLAB_MAX_TABLE_K)", k,
                                         max_table_length()));
}

void validate_collision(const ExperimentConfig& c) {
  validate_table_ks(list_or(c.k_list, kDefaultCollisionKs));
}

ExperimentOutput run_collision(const ExperimentConfig& c) {
  const auto ks = list_or(c.k_list, kDefaultCollisionKs);
  ExperimentOutput out;
  out.table.header = {"k", "p_collision", "p_count_match", "p_weighted_match", "max_point_mass"};
  std::vector<double> x, collision, count;
  for (const auto& s : summaries(ks)) {
    out.table.rows.push_back({std::int64_t{s.k}, s.collision, s.count_match, s.weighted_match, s.max_point_mass});
    x.push_back(s.k);
    collision.push_back(s.collision);
    count.push_back(s.count_match);
  }
  add_loglog_fit(out, "gh-collision-exponent", x, collision);
  add_loglog_fit(out, "count-match-half", x, count);
  return out;
}

ExperimentOutput run_conditional(const ExperimentConfig& c) {
  const auto ks = list_or(c.k_list, kDefaultCollisionKs);
  ExperimentOutput out;
  out.table.header = {"k", "p_conditional_match", "p_conditional_match_typical"};
  std::vector<double> x, y;
  for (const auto& s : summaries(ks)) {
    out.table.rows.push_back({std::int64_t{s.k}, s.conditional_match, s.conditional_match_typical});
    x.push_back(s.k);
    y.push_back(s.conditional_match);
  }
  add_loglog_fit(out, "conditional-threehalves", x, y);
  return out;
}

const std::vector<int> kDefaultDyadicKs{4, 8, 16, 31, 256, 1000};

void validate_dyadic(const ExperimentConfig& c) {
  const auto ks = list_or(c.k_list, kDefaultDyadicKs);
  require_each(ks, 2, "k-list");
  for (int k : ks)
    if (k >= (1 << 25)) throw CapExceededError("dyadic k too large");
}

ExperimentOutput run_dyadic(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.header = {"k", "support_size", "is_uniform", "lower_bound"};
  for (int k : list_or(c.k_list, kDefaultDyadicKs)) {
    const auto d = dyadic_uniformity(k);
    out.table.rows.push_back({std::int64_t{k}, d.support_size, d.is_uniform, d.lower_bound});
  }
  return out;
}

// ---- spectral ------------------------------------------------------------

const std::vector<int> kDefaultFourierKs{16, 64, 256, 1024};

void validate_fourier(const ExperimentConfig& c) {
  const auto ks = list_or(c.k_list, kDefaultFourierKs);
  require_each(ks, 4, "k-list");
  for (int k : ks)
    if (k > 1 << 16) throw CapExceededError("fourier k above 65536");
}

ExperimentOutput run_fourier(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.header = {"k", "integral", "head", "tail", "k32_scaled"};
  std::vector<double> x, y;
  for (int k : list_or(c.k_list, kDefaultFourierKs)) {
    const double total = cos_product_integral(k).value;
    const double head = head_integral(k).value;
    const double tail = tail_integral_decay(k).integral.value;
    const double scaled = total * std::pow(static_cast<double>(k), 1.5);
    out.table.rows.push_back({std::int64_t{k}, total, head, tail, scaled});
    x.push_back(k);
    y.push_back(total);
  }
  add_loglog_fit(out, "fourier-threehalves", x, y);
  return out;
}

// ---- group ---------------------------------------------------------------

const std::vector<int> kDefaultBallRadii{8, 12, 16, 24, 32};

void validate_ball(const ExperimentConfig& c) {
  const auto radii = list_or(c.radii, kDefaultBallRadii);
  require_each(radii, 0, "radii");
  for (int r : radii)
    if (r > kDefaultBallRadiusCap)
      throw CapExceededError(fmt::format("ball radius {} exceeds cap {}", r, kDefaultBallRadiusCap));
}

ExperimentOutput run_ball(const ExperimentConfig& c) {
  const auto radii = list_or(c.radii, kDefaultBallRadii);
  const auto sizes = ball_sizes(*std::max_element(radii.begin(), radii.end()));
  ExperimentOutput out;
  out.table.header = {"radius", "size"};
  std::vector<double> x, y;
  for (int r : radii) {
    out.table.rows.push_back({std::int64_t{r}, static_cast<std::int64_t>(sizes[r])});
    if (r > 0) {
      x.push_back(r);
      y.push_back(static_cast<double>(sizes[r]));
    }
  }
  add_loglog_fit(out, "ball-growth-exponent", x, y);
  return out;
}

// ---- reference models ----------------------------------------------------

const std::vector<int> kDefaultZdKs{16, 32, 64, 128};

void validate_zd_collision(const ExperimentConfig& c) {
  const int d = c.d.value_or(4);
  require(d >= 1 && d <= 32, "d must lie in [1, 32]");
  const auto ks = list_or(c.k_list, kDefaultZdKs);
  require_each(ks, 0, "k-list");
  for (int k : ks) {
    long double count = 1.0L;
    for (int i = 1; i < d; ++i) count = count * (k + i) / i;
    if (count > static_cast<long double>(kMaxCompositions))
      throw CapExceededError(fmt::format("zd-collision: d = {}, k = {} needs too many count vectors", d, k));
  }
}

ExperimentOutput run_zd_collision(const ExperimentConfig& c) {
  const int d = c.d.value_or(4);
  ExperimentOutput out;
  out.table.header = {"d", "k", "p_collision"};
  std::vector<double> x, y;
  for (int k : list_or(c.k_list, kDefaultZdKs)) {
    const double p = zd_collision_probability(d, k);
    out.table.rows.push_back({std::int64_t{d}, std::int64_t{k}, p});
    x.push_back(k);
    y.push_back(p);
  }
  if (d == 4) add_loglog_fit(out, "z4-collision-exponent", x, y);
  return out;
}

void validate_monte_carlo(const ExperimentConfig& c) {
  require(c.horizon.value_or(1) >= 1, "horizon must be >= 1");
  require(c.samples.value_or(1) >= 1, "samples must be >= 1");
  require(c.horizon.value_or(0) <= (std::uint64_t{1} << 32), "horizon above 2^32");
}

void validate_zd_monte_carlo(const ExperimentConfig& c) {
  validate_monte_carlo(c);
  const int d = c.d.value_or(4);
  require(d >= 4 && d <= 32, "d must lie in [4, 32]: the difference walk is transient from d = 4");
}

Table tail_table(const TailEstimate& est) {
  Table table;
  table.header = {"n", "pairs_shared_edges_ge_n", "pairs_vertex_coincidences_ge_n", "survivor", "std_error"};
  const std::size_t rows = std::max(est.counts.size(), est.vertex_counts.size());
  for (std::size_t n = 0; n < rows; ++n) {
    const std::uint64_t edges = n < est.counts.size() ? est.counts[n] : 0;
    const std::uint64_t vertices = n < est.vertex_counts.size() ? est.vertex_counts[n] : 0;
    const double survivor = static_cast<double>(edges) / static_cast<double>(est.samples);
    const double se = n < est.std_errors.size() ? est.std_errors[n] : 0.0;
    table.rows.push_back({static_cast<std::int64_t>(n), static_cast<std::int64_t>(edges),
                          static_cast<std::int64_t>(vertices), survivor, se});
  }
  return table;
}

void add_tail_fit(ExperimentOutput& out, const std::string& claim_id, const TailEstimate& est) {
  // Linearity of the log-survivor on n in [1, 10], clipped to well-populated n.
  std::size_t last = 1;
  while (last < 10 && last + 1 < est.counts.size() && est.counts[last + 1] >= 50) ++last;
  if (last < 2) return;
  std::vector<double> range;
  for (std::size_t n = 1; n <= last; ++n) range.push_back(static_cast<double>(n));
  out.fits.push_back({claim_id, fit_log_survivor(est.counts, 1, last), range});
}

ExperimentOutput run_eit_tail(const ExperimentConfig& c) {
  TailOptions options;
  options.threads = c.threads;
  const auto est = tail_estimate(c.horizon.value_or(4096), c.samples.value_or(100000), c.seed, options);
  ExperimentOutput out;
  out.table = tail_table(est);
  add_tail_fit(out, "eit-log-linear", est);
  return out;
}

ExperimentOutput run_zd_eit(const ExperimentConfig& c) {
  TailOptions options;
  options.threads = c.threads;
  const auto est =
      zd_eit_tail(c.d.value_or(4), c.horizon.value_or(4096), c.samples.value_or(100000), c.seed, options);
  ExperimentOutput out;
  out.table = tail_table(est);
  add_tail_fit(out, "zd-eit-log-linear", est);
  return out;
}

ExperimentOutput run_theta(const ExperimentConfig& c) {
  const auto est = theta_d_estimate(c.d.value_or(4), c.horizon.value_or(10000), c.samples.value_or(100000),
                                    c.seed, c.threads);
  ExperimentOutput out;
  out.table.header = {"d", "horizon", "samples", "returns", "theta_hat",
                      "std_error", "ci_low", "ci_high", "censoring_bound"};
  out.table.rows.push_back({std::int64_t{est.d}, static_cast<std::int64_t>(est.horizon),
                            static_cast<std::int64_t>(est.samples), static_cast<std::int64_t>(est.returns),
                            est.theta_hat, est.std_error, est.ci_low, est.ci_high, est.censoring_bound});
  return out;
}

const std::vector<int> kDefaultReturnNs{8, 16, 24, 32, 40, 48};

void validate_srw_return(const ExperimentConfig& c) {
  const auto ns = list_or(c.n_list, kDefaultReturnNs);
  require_each(ns, 1, "n-list");
  for (int n : ns)
    if (n > kDefaultSrwStepCap)
      throw CapExceededError(fmt::format("n = {} exceeds the convolution cap {}", n, kDefaultSrwStepCap));
}

ExperimentOutput run_srw_return(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.header = {"n", "p_return_2n"};
  std::vector<double> x, y;
  for (int n : list_or(c.n_list, kDefaultReturnNs)) {
    const double p = srw_return_probability(2 * n);
    out.table.rows.push_back({std::int64_t{n}, p});
    x.push_back(n);
    y.push_back(p);
  }
  add_loglog_fit(out, "srw-return-exponent", x, y);
  return out;
}

void validate_intersections(const ExperimentConfig& c) {
  require(c.base_time.value_or(1) >= 1, "base-time must be >= 1");
  const int levels = c.levels.value_or(3);
  require(levels >= 1 && levels <= 16, "levels must lie in [1, 16]");
  require(c.samples.value_or(1) >= 1, "samples must be >= 1");
  require((c.base_time.value_or(256) << (levels - 1)) <= (std::uint64_t{1} << 26), "walk length above 2^26");
}

ExperimentOutput run_intersections(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.header = {"time", "mean_intersections", "std_error"};
  for (const auto& point : srw_mutual_intersections(c.base_time.value_or(256), c.levels.value_or(3),
                                                    c.samples.value_or(2000), c.seed, c.threads))
    out.table.rows.push_back({static_cast<std::int64_t>(point.time), point.mean, point.std_error});
  return out;
}

// ---- percolation ---------------------------------------------------------

const std::vector<int> kDefaultProfileRadii{4, 8, 12, 16};

Lattice lattice_from(const std::string& name) {
  if (name == "heisenberg") return Lattice::heisenberg();
  if (name == "z2") return Lattice::integer(2);
  if (name == "z3") return Lattice::integer(3);
  if (name == "z4") return Lattice::integer(4);
  throw ConfigError("graph must be heisenberg, z2, z3 or z4, got '" + name + "'");
}

void validate_percolation(const ExperimentConfig& c) {
  lattice_from(c.graph.value_or("heisenberg"));
  const double p = c.p.value_or(1.0);
  require(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
  const auto radii = list_or(c.radii, kDefaultProfileRadii);
  require_each(radii, 1, "radii");
  require_increasing(radii, "radii");
  if (radii.back() > kDefaultBallRadiusCap)
    throw CapExceededError(fmt::format("radius {} exceeds cap {}", radii.back(), kDefaultBallRadiusCap));
  const int seeds = c.seeds.value_or(5);
  require(seeds >= 1 && seeds <= 10000, "seeds must lie in [1, 10000]");
  require(c.num_paths.value_or(1) >= 1, "num-paths must be >= 1");
}

std::vector<std::uint64_t> seed_list(const ExperimentConfig& c) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(c.seeds.value_or(5)));
  std::iota(seeds.begin(), seeds.end(), c.seed);
  return seeds;
}

ExperimentOutput run_resistance(const ExperimentConfig& c) {
  const auto radii = list_or(c.radii, kDefaultProfileRadii);
  const auto seeds = seed_list(c);
  const auto profile = resistance_profile(lattice_from(c.graph.value_or("heisenberg")), c.p.value_or(1.0),
                                          radii, seeds, c.threads);
  ExperimentOutput out;
  out.table.header = {"radius", "mean_resistance", "increment", "connected_seeds"};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double increment = i == 0 ? profile.mean_resistance[0]
                                    : profile.mean_resistance[i] - profile.mean_resistance[i - 1];
    out.table.rows.push_back({std::int64_t{radii[i]}, profile.mean_resistance[i], increment,
                              std::int64_t{profile.connected_seeds[i]}});
  }
  return out;
}

ExperimentOutput run_path_energy(const ExperimentConfig& c) {
  const auto radii = list_or(c.radii, kDefaultProfileRadii);
  const auto seeds = seed_list(c);
  const double p = c.p.value_or(1.0);
  const auto paths = c.num_paths.value_or(20000);
  ExperimentOutput out;
  out.table.header = {"radius", "mean_energy", "increment", "mean_surviving"};
  double previous = 0.0;
  for (int r : radii) {
    const auto box = std::make_shared<const LatticeBox>(Lattice::heisenberg(), r);
    double energy = 0.0, surviving = 0.0;
    int finite = 0;
    for (auto seed : seeds) {
      const auto result = path_flow_energy(percolate_box(box, p, seed), paths, seed);
      surviving += static_cast<double>(result.surviving);
      if (std::isfinite(result.energy)) {
        energy += result.energy;
        ++finite;
      }
    }
    const double mean = finite > 0 ? energy / finite : INFINITY;
    out.table.rows.push_back({std::int64_t{r}, mean, mean - previous, surviving / seeds.size()});
    previous = mean;
  }
  return out;
}

}  // namespace

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> registry{
      {"collision-exact", "exact endpoint, count and weighted-sum match probabilities",
       {"k", "p_collision", "p_count_match", "p_weighted_match", "max_point_mass"},
       {"k-list"}, {"gh-collision-exponent", "count-match-half"}, validate_collision, run_collision},
      {"conditional-exact", "weighted-sum match probability given equal counts",
       {"k", "p_conditional_match", "p_conditional_match_typical"},
       {"k-list"}, {"conditional-threehalves"}, validate_collision, run_conditional},
      {"dyadic", "exact law of the dyadic partial weighted sum",
       {"k", "support_size", "is_uniform", "lower_bound"}, {"k-list"}, {}, validate_dyadic, run_dyadic},
      {"fourier", "cosine-product integral and its head/tail split",
       {"k", "integral", "head", "tail", "k32_scaled"}, {"k-list"}, {"fourier-threehalves"},
       validate_fourier, run_fourier},
      {"ball-growth", "word-metric ball sizes of the Heisenberg group", {"radius", "size"}, {"radii"},
       {"ball-growth-exponent"}, validate_ball, run_ball},
      {"zd-collision", "exact collision probability of oriented walks on Z^d", {"d", "k", "p_collision"},
       {"d", "k-list"}, {"z4-collision-exponent"}, validate_zd_collision, run_zd_collision},
      {"eit-tail", "shared-edge survivor counts of oriented path pairs",
       {"n", "pairs_shared_edges_ge_n", "pairs_vertex_coincidences_ge_n", "survivor", "std_error"},
       {"horizon", "samples"}, {"eit-log-linear"}, validate_monte_carlo, run_eit_tail},
      {"zd-eit", "shared-edge survivor counts of oriented path pairs on Z^d",
       {"n", "pairs_shared_edges_ge_n", "pairs_vertex_coincidences_ge_n", "survivor", "std_error"},
       {"d", "horizon", "samples"}, {"zd-eit-log-linear"}, validate_zd_monte_carlo, run_zd_eit},
      {"theta-d", "return probability of the Z^d difference walk",
       {"d", "horizon", "samples", "returns", "theta_hat", "std_error", "ci_low", "ci_high", "censoring_bound"},
       {"d", "horizon", "samples"}, {}, validate_zd_monte_carlo, run_theta},
      {"srw-return", "exact simple random walk return probability P(2n)", {"n", "p_return_2n"}, {"n-list"},
       {"srw-return-exponent"}, validate_srw_return, run_srw_return},
      {"srw-intersections", "mean common vertices of two simple random walk ranges",
       {"time", "mean_intersections", "std_error"}, {"base-time", "levels", "samples"}, {},
       validate_intersections, run_intersections},
      {"resistance", "origin-to-shell effective resistance of percolated balls",
       {"radius", "mean_resistance", "increment", "connected_seeds"}, {"graph", "p", "radii", "seeds"}, {},
       validate_percolation, run_resistance},
      {"path-energy", "energy of the averaged open oriented-path flow",
       {"radius", "mean_energy", "increment", "mean_surviving"}, {"p", "radii", "seeds", "num-paths"}, {},
       validate_percolation, run_path_energy},
  };
  return registry;
}

const Experiment& find_experiment(const std::string& name) {
  for (const auto& e : experiments())
    if (e.name == name) return e;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::vector<std::string> known_claim_ids() {
  std::vector<std::string> ids;
  for (const auto& e : experiments()) ids.insert(ids.end(), e.claim_ids.begin(), e.claim_ids.end());
  return ids;
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return fmt::format("{:.17g}", v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else return fmt::format("{}", v);
      },
      cell);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace heislab::harness
