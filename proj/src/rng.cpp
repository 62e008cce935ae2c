#include "heislab/rng.hpp"

namespace heislab {

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  __uint128_t product = static_cast<__uint128_t>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<__uint128_t>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double hash_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                    std::uint64_t d) {
  std::uint64_t h = mix64(seed + 0xD1B54A32D192ED03ULL);
  h = mix64(h ^ a);
  h = mix64(h ^ (b + 0x8CB92BA72F3D8DD7ULL));
  h = mix64(h ^ (c + 0xA0761D6478BD642FULL));
  h = mix64(h ^ (d + 0xE7037ED1A0B428DBULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

CounterRng make_stream(std::uint64_t seed, StreamFamily family, std::uint64_t index) {
  return CounterRng(mix64(seed + static_cast<std::uint64_t>(family) * 0x9E3779B97F4A7C15ULL), index);
}

}  // namespace heislab
