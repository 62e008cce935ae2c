#include "heislab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "heislab/errors.hpp"

namespace heislab {
namespace {

constexpr double kPi = std::numbers::pi;

void check_k(int k, int minimum, const char* what) {
  if (k < minimum)
    throw std::invalid_argument(std::string(what) + ": k must be >= " + std::to_string(minimum));
}

// Breakpoints on [a, b]: fine panels over the central peak of width about
// scale * k^{-3/2}, coarse 1e-2 panels elsewhere.
std::vector<double> peak_breaks(int k, double scale, double a, double b) {
  const double width = scale * std::pow(static_cast<double>(k), -1.5);
  const double fine = std::min(1e-2, width / 8.0);
  const double peak_end = std::min(b, 16.0 * width);
  std::vector<double> breaks{a};
  auto push = [&](double x) {
    if (x > breaks.back() && x < b) breaks.push_back(x);
  };
  double x = 0.0;
  for (; x < peak_end; x += fine) push(x);
  push(peak_end);
  for (x = peak_end; x < b; x += 1e-2) push(x);
  breaks.push_back(b);
  return breaks;
}

}  // namespace

double cos_product(int k, double x) {
  double product = 1.0;
  for (int j = 1; j < k; ++j) {
    product *= std::abs(std::cos(j * x));
    if (product == 0.0) break;
  }
  return product;
}

double distance_to_pi_multiple(double x) {
  const double r = std::abs(std::remainder(x, kPi));
  return r;
}

double fold_symmetry_discrepancy(int k, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    // Deterministic low-discrepancy points in [-pi, pi].
    const double u = std::fmod(0.5 + i * 0.6180339887498949, 1.0);
    const double x = -kPi + 2.0 * kPi * u;
    const double base = cos_product(k, x);
    worst = std::max(worst, std::abs(cos_product(k, x + kPi) - base));
    worst = std::max(worst, std::abs(cos_product(k, -x) - base));
    worst = std::max(worst, std::abs(cos_product(k, kPi - x) - base));
  }
  return worst;
}

QuadratureResult cos_product_integral(int k, const QuadratureOptions& options) {
  check_k(k, 1, "cos_product_integral");
  if (fold_symmetry_discrepancy(k, 64) > 1e-9)
    throw std::logic_error("cos_product_integral: fold identities failed numerically");
  auto f = [k](double x) { return cos_product(k, x); };
  QuadratureOptions quarter = options;
  quarter.abs_tol = options.abs_tol / 4.0;
  auto r = integrate(f, peak_breaks(k, 1.0, 0.0, kPi / 2.0), quarter);
  r.value *= 4.0;
  r.abs_error_estimate *= 4.0;
  return r;
}

QuadratureResult head_integral(int k, const QuadratureOptions& options) {
  check_k(k, 2, "head_integral");
  const double end = 1.0 / k;
  // Largest argument is (k-1)/k < pi, so no factor passes a multiple of pi.
  if (!((k - 1) * end < kPi)) throw std::logic_error("head_integral: argument range");
  auto f = [k](double x) { return cos_product(k, x); };
  return integrate(f, peak_breaks(k, 1.0, 0.0, end), options);
}

TailDecay tail_integral_decay(int k, const QuadratureOptions& options) {
  check_k(k, 4, "tail_integral_decay");
  const double start = 1.0 / k, end = kPi / 2.0;
  auto f = [k](double x) { return cos_product(k, x); };
  TailDecay out;
  out.integral = integrate(f, peak_breaks(k, 1.0, start, end), options);
  const int grid = std::max(10000, 20 * k);
  double min_rate = INFINITY;
  for (int i = 0; i <= grid; ++i) {
    const double x = start + (end - start) * i / grid;
    double sum = 0.0;
    for (int j = 1; j < k; ++j) {
      const double d = distance_to_pi_multiple(j * x);
      sum += d * d;
    }
    min_rate = std::min(min_rate, sum / k);
  }
  out.min_quadratic_sum_rate = min_rate;
  return out;
}

GaussianBoundCheck check_cos_gaussian_bound(double c, int grid_points) {
  if (!(c > 0.0)) throw std::invalid_argument("gaussian bound: c must be positive");
  if (grid_points < 1000) throw std::invalid_argument("gaussian bound: need >= 1000 grid points");
  // Relative slack of a few ulps; the two sides agree to O(x^4) near 0.
  constexpr double kSlack = 4.0 * 2.220446049250313e-16;
  auto excess = [c](double x) {
    const double f = distance_to_pi_multiple(x);
    return std::abs(std::cos(x)) - std::exp(-c * f * f);
  };
  GaussianBoundCheck out;
  out.worst_excess = -INFINITY;
  auto consider = [&](double x) {
    const double e = excess(x);
    ++out.points_checked;
    if (e > out.worst_excess) {
      out.worst_excess = e;
      out.worst_x = x;
    }
  };
  const double h = kPi / grid_points;
  std::vector<double> values(static_cast<std::size_t>(grid_points) + 1);
  for (int i = 0; i <= grid_points; ++i) {
    values[i] = excess(i * h);
    consider(i * h);
  }
  // Refine every interior local maximum of the difference by golden-section
  // search on the two neighbouring cells.
  for (int i = 1; i < grid_points; ++i) {
    if (!(values[i] >= values[i - 1] && values[i] >= values[i + 1])) continue;
    double lo = (i - 1) * h, hi = (i + 1) * h;
    constexpr double kGolden = 0.6180339887498949;
    for (int it = 0; it < 60; ++it) {
      const double m1 = hi - kGolden * (hi - lo), m2 = lo + kGolden * (hi - lo);
      if (excess(m1) < excess(m2)) lo = m1;
      else hi = m2;
    }
    consider(0.5 * (lo + hi));
  }
  out.holds = out.worst_excess <= kSlack;
  return out;
}

bool verify_cos_gaussian_bound(double c, int grid_points) {
  return check_cos_gaussian_bound(c, grid_points).holds;
}

std::vector<double> point_masses_via_inversion(int k) {
  check_k(k, 1, "point_masses_via_inversion");
  const std::int64_t degree = static_cast<std::int64_t>(k) * (k - 1) / 2;
  if (degree > (std::int64_t{1} << 22)) throw CapExceededError("inversion degree too large");
  std::size_t nodes = 1;
  while (static_cast<std::int64_t>(nodes) <= degree) nodes <<= 1;
  std::vector<std::complex<double>> roots(nodes);
  for (std::size_t m = 0; m < nodes; ++m) roots[m] = std::polar(1.0, 2.0 * kPi * m / nodes);
  // Characteristic function at x_m = 2 pi m / N.
  std::vector<std::complex<double>> phi(nodes, 1.0);
  for (std::size_t m = 0; m < nodes; ++m)
    for (int j = 1; j < k; ++j)
      phi[m] *= 0.5 * (1.0 + roots[(static_cast<std::size_t>(j) * m) % nodes]);
  std::vector<double> masses(static_cast<std::size_t>(degree) + 1);
  for (std::int64_t n = 0; n <= degree; ++n) {
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < nodes; ++m)
      sum += phi[m] * std::conj(roots[(static_cast<std::size_t>(n) * m) % nodes]);
    masses[n] = sum.real() / static_cast<double>(nodes);
  }
  return masses;
}

double point_mass_via_inversion(int k, std::int64_t n) {
  check_k(k, 1, "point_mass_via_inversion");
  const std::int64_t degree = static_cast<std::int64_t>(k) * (k - 1) / 2;
  if (n < 0 || n > degree) throw std::out_of_range("point_mass_via_inversion: n outside 0..k(k-1)/2");
  std::size_t nodes = 1;
  while (static_cast<std::int64_t>(nodes) <= degree) nodes <<= 1;
  std::complex<double> sum = 0.0;
  for (std::size_t m = 0; m < nodes; ++m) {
    const double x = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(nodes);
    std::complex<double> phi = 1.0;
    for (int j = 1; j < k; ++j) phi *= 0.5 * (1.0 + std::polar(1.0, j * x));
    const auto phase = std::polar(1.0, -2.0 * kPi * static_cast<double>((static_cast<std::size_t>(n) * m) % nodes) /
                                           static_cast<double>(nodes));
    sum += phi * phase;
  }
  return sum.real() / static_cast<double>(nodes);
}

QuadratureResult inversion_bound(int k, const QuadratureOptions& options) {
  check_k(k, 1, "inversion_bound");
  auto f = [k](double x) { return cos_product(k, 0.5 * x); };
  // Integrand is even; the central peak has width about 2 k^{-3/2}.
  auto r = integrate(f, peak_breaks(k, 2.0, 0.0, kPi), options);
  r.value = 2.0 * r.value / (2.0 * kPi);
  r.abs_error_estimate = 2.0 * r.abs_error_estimate / (2.0 * kPi);
  return r;
}

}  // namespace heislab
