#include "heislab/oriented_paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "heislab/parallel.hpp"

namespace heislab {
namespace {

struct Walker {
  std::int64_t x = 0, y = 0, z = 0;

  void step(std::uint8_t bit) {
    if (bit == 0) {
      ++x;
      z -= y;
    } else {
      ++y;
    }
  }
  friend bool operator==(const Walker&, const Walker&) = default;
};

void check_time(const BitWord& w, std::size_t t) {
  if (t > w.size())
    throw std::out_of_range("time " + std::to_string(t) + " beyond word length " +
                            std::to_string(w.size()));
}

void check_lengths(const BitWord& u, const BitWord& v) {
  if (u.size() != v.size()) throw std::invalid_argument("words must have equal lengths");
}

// Draws bits lazily, 64 per generator call.
class BitSource {
 public:
  explicit BitSource(CounterRng rng) : rng_(rng) {}
  std::uint8_t next() {
    if (left_ == 0) {
      word_ = rng_.next();
      left_ = 64;
    }
    const auto bit = static_cast<std::uint8_t>(word_ & 1U);
    word_ >>= 1;
    --left_;
    return bit;
  }

 private:
  CounterRng rng_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

void add_to_histogram(std::vector<std::uint64_t>& histogram, std::size_t value) {
  if (histogram.size() <= value) histogram.resize(value + 1, 0);
  ++histogram[value];
}

void merge_histogram(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
  if (into.size() < from.size()) into.resize(from.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
}

std::vector<std::uint64_t> survivor_counts(const std::vector<std::uint64_t>& histogram,
                                           std::uint64_t samples) {
  std::vector<std::uint64_t> counts(histogram.size() + 0, 0);
  if (counts.empty()) counts.push_back(samples);
  std::uint64_t above = 0;
  for (std::size_t n = histogram.size(); n-- > 0;) {
    above += histogram[n];
    counts[n] = above;
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return counts;
}

}  // namespace

BitWord::BitWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("BitWord entries must be 0 or 1");
}

BitWord BitWord::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("BitWord text must be 0/1 characters");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return BitWord(std::move(bits));
}

std::vector<Generator> BitWord::to_generators() const {
  std::vector<Generator> word;
  word.reserve(bits_.size());
  for (auto b : bits_) word.push_back(b == 0 ? Generator::A : Generator::B);
  return word;
}

BitWord sample_word(std::size_t k, CounterRng& stream) {
  std::vector<std::uint8_t> bits(k);
  std::uint64_t word = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (j % 64 == 0) word = stream.next();
    bits[j] = static_cast<std::uint8_t>(word & 1U);
    word >>= 1;
  }
  return BitWord(std::move(bits));
}

GroupElement position(const BitWord& w, std::size_t t) {
  check_time(w, t);
  Walker walker;
  for (std::size_t j = 0; j < t; ++j) walker.step(w[j]);
  return {walker.x, walker.y, walker.z};
}

std::int64_t ones_count(const BitWord& w, std::size_t t) {
  check_time(w, t);
  return std::count(w.bits().begin(), w.bits().begin() + static_cast<std::ptrdiff_t>(t), 1);
}

std::int64_t weighted_sum(const BitWord& w, std::size_t t) {
  check_time(w, t);
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < t; ++j) sum += static_cast<std::int64_t>(j) * w[j];
  return sum;
}

bool coincides(const BitWord& u, const BitWord& v, std::size_t t) {
  check_time(u, t);
  check_time(v, t);
  return position(u, t) == position(v, t);
}

std::size_t shared_edges(const BitWord& u, const BitWord& v) {
  check_lengths(u, v);
  Walker a, b;
  std::size_t shared = 0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    if (a == b && u[t] == v[t]) ++shared;
    a.step(u[t]);
    b.step(v[t]);
  }
  return shared;
}

std::size_t vertex_coincidences(const BitWord& u, const BitWord& v) {
  check_lengths(u, v);
  Walker a, b;
  std::size_t meetings = 0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    a.step(u[t]);
    b.step(v[t]);
    if (a == b) ++meetings;
  }
  return meetings;
}

LinearFit fit_log_survivor(const std::vector<std::uint64_t>& counts, std::size_t first,
                           std::size_t last) {
  std::vector<double> xs, ys;
  for (std::size_t n = first; n <= last && n < counts.size(); ++n) {
    if (counts[n] == 0) break;
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log(static_cast<double>(counts[n])));
  }
  if (xs.size() < last - first + 1)
    throw std::invalid_argument("fit_log_survivor: empty survivor count inside requested range");
  return fit_line(xs, ys);
}

TailEstimate make_tail_estimate(std::size_t horizon, std::uint64_t samples,
                                const std::vector<std::uint64_t>& edge_histogram,
                                const std::vector<std::uint64_t>& vertex_histogram,
                                std::uint64_t min_count, double censoring_bound) {
  TailEstimate est;
  est.horizon = horizon;
  est.samples = samples;
  est.counts = survivor_counts(edge_histogram, samples);
  est.vertex_counts = survivor_counts(vertex_histogram, samples);
  est.censoring_bound = censoring_bound;
  const double total = static_cast<double>(samples);
  for (auto c : est.counts) {
    const double q = static_cast<double>(c) / total;
    est.std_errors.push_back(std::sqrt(q * (1.0 - q) / total));
  }
  std::size_t last = 0;
  while (last + 1 < est.counts.size() && est.counts[last + 1] >= min_count) ++last;
  if (last >= 2) {
    est.fit_first = 1;
    est.fit_last = last;
    est.fit = fit_log_survivor(est.counts, 1, last);
    est.theta_hat = std::exp(est.fit->slope);
  }
  return est;
}

TailEstimate tail_estimate(std::size_t horizon, std::uint64_t samples, std::uint64_t seed,
                           const TailOptions& options) {
  if (horizon < 1) throw std::invalid_argument("tail_estimate: horizon must be >= 1");
  if (samples < 1) throw std::invalid_argument("tail_estimate: samples must be >= 1");
  const std::size_t blocks = block_count(samples);
  std::vector<std::vector<std::uint64_t>> edge_parts(blocks), vertex_parts(blocks);
  parallel_blocks(blocks, options.threads, [&](std::size_t block) {
    const std::uint64_t begin = block * kSamplesPerBlock;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kSamplesPerBlock);
    for (std::uint64_t pair = begin; pair < end; ++pair) {
      BitSource bits_u(make_stream(seed, StreamFamily::OrientedPairs, 2 * pair));
      BitSource bits_v(make_stream(seed, StreamFamily::OrientedPairs, 2 * pair + 1));
      Walker a, b;
      std::size_t edges = 0, vertices = 0;
      for (std::size_t t = 0; t < horizon; ++t) {
        const auto bu = bits_u.next(), bv = bits_v.next();
        if (a == b && bu == bv) ++edges;
        a.step(bu);
        b.step(bv);
        if (a == b) ++vertices;
      }
      add_to_histogram(edge_parts[block], edges);
      add_to_histogram(vertex_parts[block], vertices);
    }
  });
  std::vector<std::uint64_t> edge_histogram, vertex_histogram;
  for (std::size_t b = 0; b < blocks; ++b) {
    merge_histogram(edge_histogram, edge_parts[b]);
    merge_histogram(vertex_histogram, vertex_parts[b]);
  }
  // Coincidence probability at step k decays like k^-2; sum over k > horizon.
  const double censoring = 1.0 / static_cast<double>(horizon);
  return make_tail_estimate(horizon, samples, edge_histogram, vertex_histogram, options.min_count,
                            censoring);
}

RenewalCheck check_renewal(const std::vector<std::uint64_t>& counts, std::uint64_t min_count,
                           double z_limit) {
  RenewalCheck check;
  std::uint64_t numerator = 0, denominator = 0;
  for (std::size_t n = 0; n + 1 < counts.size(); ++n) {
    if (counts[n] < min_count) break;
    check.n.push_back(n);
    check.hazard.push_back(static_cast<double>(counts[n + 1]) / static_cast<double>(counts[n]));
    numerator += counts[n + 1];
    denominator += counts[n];
  }
  if (check.n.empty()) return check;
  check.pooled = static_cast<double>(numerator) / static_cast<double>(denominator);
  const double h = check.pooled;
  check.pass = true;
  for (std::size_t i = 0; i < check.n.size(); ++i) {
    const double se = std::sqrt(h * (1.0 - h) / static_cast<double>(counts[check.n[i]]));
    check.std_error.push_back(se);
    const double z = se > 0.0 ? std::abs(check.hazard[i] - h) / se : 0.0;
    check.worst_z = std::max(check.worst_z, z);
    if (z > z_limit) check.pass = false;
  }
  return check;
}

CollisionFrequency collision_frequency(std::size_t k, std::uint64_t samples, std::uint64_t seed,
                                       int threads) {
  if (samples < 1) throw std::invalid_argument("collision_frequency: samples must be >= 1");
  const std::size_t blocks = block_count(samples);
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_blocks(blocks, threads, [&](std::size_t block) {
    const std::uint64_t begin = block * kSamplesPerBlock;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kSamplesPerBlock);
    for (std::uint64_t pair = begin; pair < end; ++pair) {
      auto ru = make_stream(seed, StreamFamily::CollisionPairs, 2 * pair);
      auto rv = make_stream(seed, StreamFamily::CollisionPairs, 2 * pair + 1);
      if (position(sample_word(k, ru), k) == position(sample_word(k, rv), k)) ++hits[block];
    }
  });
  CollisionFrequency result;
  result.samples = samples;
  for (auto h : hits) result.hits += h;
  const double total = static_cast<double>(samples);
  result.frequency = static_cast<double>(result.hits) / total;
  result.std_error = std::sqrt(result.frequency * (1.0 - result.frequency) / total);
  return result;
}

}  // namespace heislab
