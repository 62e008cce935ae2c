#pragma once

#include <cstdint>

namespace heislab {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Counter-based generator. Output i of stream (seed, index) is a pure
/// function of (seed, index, i), so any partition of work over streams gives
/// the same numbers regardless of scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return mix64(key_ + (++counter_) * kGamma); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound > 0. Lemire's multiply-shift with
  /// rejection.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stateless hash of a seed and a tuple of integers to [0, 1). Used where a
/// value must depend only on an identity (percolation edge uniforms).
double hash_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                    std::uint64_t d);

/// Stream-family salts so different experiments never share streams.
enum class StreamFamily : std::uint64_t {
  OrientedPairs = 1,
  CollisionPairs = 2,
  DifferenceWalk = 3,
  ZdTail = 4,
  SimpleWalk = 5,
  PathFlow = 6,
  WordSampling = 7,
};

CounterRng make_stream(std::uint64_t seed, StreamFamily family, std::uint64_t index);

}  // namespace heislab
