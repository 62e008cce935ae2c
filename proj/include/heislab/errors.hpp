#pragma once

#include <stdexcept>
#include <string>

namespace heislab {

// Signed 64-bit coordinate arithmetic left its range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A size cap (ball radius, DP table length, support size) would be exceeded.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative linear solve or adaptive quadrature did not reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration or manifest.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heislab
