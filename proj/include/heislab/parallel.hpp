#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace heislab {

/// Runs body(block) for block in [0, blocks) on up to `threads` workers.
/// Blocks are claimed dynamically; callers keep results per block (or merge
/// with order-independent integer sums) so output never depends on the
/// schedule. The first exception thrown by any block is rethrown.
template <typename Body>
void parallel_blocks(std::size_t blocks, int threads, Body&& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || blocks <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t b;
      {
        std::lock_guard lock(mutex);
        if (next >= blocks || error) return;
        b = next++;
      }
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, blocks); ++w) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

inline constexpr std::size_t kSamplesPerBlock = 1024;

inline std::size_t block_count(std::size_t samples) {
  return (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
}

}  // namespace heislab
