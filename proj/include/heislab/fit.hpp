#pragma once

#include <span>

namespace heislab {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares of log y against log x; all values must be positive.
LinearFit fit_log_log(std::span<const double> x, std::span<const double> y);

}  // namespace heislab
