#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rdst {

inline double mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Population standard deviation (divisor n).
inline double population_std(std::span<const double> v) {
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) {
    const double dev = x - m;
    ss += dev * dev;
  }
  return std::sqrt(ss / static_cast<double>(v.size()));
}

// p-th percentile (p in [0, 100]) of an ascending-sorted span, with linear
// interpolation between the closest order statistics at rank
// r = p/100 * (n-1). Exact at p = 0 and p = 100.
inline double percentile_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double clamped = std::clamp(p, 0.0, 100.0);
  const double r = clamped / 100.0 * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(r);
  const double frac = r - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= n) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

// Convenience overload that sorts a copy.
inline double percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return percentile_sorted(values, p);
}

}  // namespace rdst
