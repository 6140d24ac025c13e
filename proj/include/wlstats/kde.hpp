#ifndef WLSTATS_KDE_HPP
#define WLSTATS_KDE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "wlstats/error.hpp"
#include "wlstats/summation.hpp"

namespace wlstats {

inline constexpr std::size_t kDefaultKdeGrid = 512;

struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

// Silverman's rule of thumb, 1.06 * s * n^(-1/5), with s the n-1 sample
// standard deviation.
inline double silverman_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) throw DomainError("bandwidth needs at least two samples");
  const double n = static_cast<double>(samples.size());
  const double mean = compensated_sum(samples) / n;
  CompensatedSum ss;
  for (double x : samples) ss.add((x - mean) * (x - mean));
  const double s = std::sqrt(ss.value() / (n - 1.0));
  const double h = 1.06 * s * std::pow(n, -0.2);
  if (!(h > 0.0)) throw DomainError("zero bandwidth");
  return h;
}

// Unnormalized Gaussian KDE value at x.
inline double kde_evaluate(std::span<const double> samples, double bandwidth, double x) {
  CompensatedSum acc;
  for (double s : samples) {
    const double z = (x - s) / bandwidth;
    acc.add(std::exp(-0.5 * z * z));
  }
  return acc.value() * std::numbers::inv_sqrtpi / std::numbers::sqrt2 /
         (static_cast<double>(samples.size()) * bandwidth);
}

inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  CompensatedSum acc;
  for (std::size_t i = 1; i < x.size(); ++i) acc.add(0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]));
  return acc.value();
}

// Gaussian KDE on a uniform grid over [min - 3h, max + 3h], rescaled so
// that its trapezoidal integral over the grid is 1.
inline DensityCurve kde(std::span<const double> samples, std::size_t grid_size = kDefaultKdeGrid) {
  if (grid_size < 2) throw ConfigError("KDE grid needs at least two points");
  if (samples.size() < 2) throw DomainError("KDE needs at least two samples");
  const auto [lo_it, hi_it] = std::ranges::minmax_element(samples);
  if (*lo_it == *hi_it) throw DomainError("zero bandwidth");
  const double h = silverman_bandwidth(samples);

  DensityCurve curve;
  curve.bandwidth = h;
  const double lo = *lo_it - 3.0 * h;
  const double hi = *hi_it + 3.0 * h;
  const double step = (hi - lo) / static_cast<double>(grid_size - 1);
  curve.grid.resize(grid_size);
  curve.density.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    curve.grid[i] = i + 1 == grid_size ? hi : lo + step * static_cast<double>(i);
    curve.density[i] = kde_evaluate(samples, h, curve.grid[i]);
  }
  const double area = trapezoid(curve.grid, curve.density);
  for (double& d : curve.density) d /= area;
  return curve;
}

}  // namespace wlstats

#endif  // WLSTATS_KDE_HPP
