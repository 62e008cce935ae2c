#pragma once

#include <cstdint>
#include <vector>

#include "heislab/quadrature.hpp"

namespace heislab {

/// prod_{j<k} |cos(j x)|. The j = 0 factor is 1.
double cos_product(int k, double x);

/// Distance from x to the nearest integer multiple of pi.
double distance_to_pi_multiple(double x);

/// Checks the fold identities of cos_product at deterministic sample points:
/// period pi, evenness and x -> pi - x. Returns the largest discrepancy.
double fold_symmetry_discrepancy(int k, int samples);

/// Integral of prod_{j<k} |cos(j x)| over [-pi, pi], evaluated as four times
/// the integral over [0, pi/2] after checking the fold identities. Panels near
/// 0 are at most min(1e-2, k^{-3/2}/8) wide so the central peak is resolved.
QuadratureResult cos_product_integral(int k, const QuadratureOptions& options = {});

/// Integral over [0, 1/k]; there j x < 1 for every factor, so the distance to
/// the nearest multiple of pi is j x itself.
QuadratureResult head_integral(int k, const QuadratureOptions& options = {});

struct TailDecay {
  QuadratureResult integral;
  /// min over a grid of x in [1/k, pi/2] of (1/k) sum_{j<k} dist(jx, pi Z)^2.
  double min_quadratic_sum_rate = 0.0;
};

/// Integral over [1/k, pi/2] plus the quadratic-sum rate witness.
TailDecay tail_integral_decay(int k, const QuadratureOptions& options = {});

struct GaussianBoundCheck {
  bool holds = false;
  double worst_x = 0.0;
  double worst_excess = 0.0;  // max of |cos x| - exp(-c f(x)^2); <= 0 when it holds
  int points_checked = 0;
};

/// Tests |cos x| <= exp(-c f(x)^2) on a uniform grid of [0, pi] plus refined
/// local maxima of the difference. Both sides are even and pi-periodic, so
/// [0, pi] covers the real line.
GaussianBoundCheck check_cos_gaussian_bound(double c, int grid_points);
bool verify_cos_gaussian_bound(double c, int grid_points);

/// P[sum_{j<k} j bit_j = n] obtained by inverting the exact characteristic
/// function prod_{j<k} (1 + e^{ijx}) / 2. The trigonometric polynomial has
/// degree k(k-1)/2, so the equispaced rule with N > degree nodes is exact.
double point_mass_via_inversion(int k, std::int64_t n);

/// All point masses n = 0..k(k-1)/2 from one set of characteristic-function
/// evaluations.
std::vector<double> point_masses_via_inversion(int k);

/// (1/2pi) * integral over [-pi, pi] of |prod_{j<k} (1 + e^{ijx}) / 2|
/// = (1/2pi) * integral of prod |cos(jx/2)|; bounds every point mass.
QuadratureResult inversion_bound(int k, const QuadratureOptions& options = {});

}  // namespace heislab
