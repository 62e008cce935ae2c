#pragma once

#include <functional>
#include <vector>

namespace heislab {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-4;
  int max_panels = 400000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Starts from the panels
/// delimited by `breaks` (sorted, first = a, last = b) and bisects the panel
/// with the largest error estimate until the summed estimate is at most
/// max(abs_tol, rel_tol * |value|). Throws SolverError if max_panels is hit.
QuadratureResult integrate(const std::function<double(double)>& f, const std::vector<double>& breaks,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace heislab
