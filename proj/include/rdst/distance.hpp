#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rdst/errors.hpp"
#include "rdst/types.hpp"

namespace rdst {

// z-scores a vector against its own mean and population std. A vector whose
// std falls below kDegenerateStd maps to all zeros.
inline std::vector<double> znormalize(std::span<const double> v) {
  const auto n = v.size();
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mu = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) {
    const double dev = x - mu;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n));
  std::vector<double> out(n);
  if (sd < kDegenerateStd) return out;  // zeros
  for (std::size_t i = 0; i < n; ++i) out[i] = (v[i] - mu) / sd;
  return out;
}

namespace detail {

// Distance at start position i, raw mode:
//   sqrt( sum_j (x[i + j*d] - s[j])^2 ),  j ascending.
inline double position_distance_raw(const double* x, std::size_t i,
                                    const double* s, std::size_t l,
                                    std::size_t d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < l; ++j) {
    const double diff = x[i + j * d] - s[j];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

// Distance at start position i, normalized mode: the dilated window is
// z-scored on the fly (two-pass mean/std, ascending) before comparison with
// the already-normalized shapelet values. A degenerate window compares as
// all zeros, giving the L2 norm of the shapelet values.
inline double position_distance_norm(const double* x, std::size_t i,
                                     const double* s, std::size_t l,
                                     std::size_t d) {
  double sum = 0.0;
  for (std::size_t j = 0; j < l; ++j) sum += x[i + j * d];
  const double mu = sum / static_cast<double>(l);
  double ss = 0.0;
  for (std::size_t j = 0; j < l; ++j) {
    const double dev = x[i + j * d] - mu;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(l));

  double acc = 0.0;
  if (sd < kDegenerateStd) {
    for (std::size_t j = 0; j < l; ++j) acc += s[j] * s[j];
  } else {
    for (std::size_t j = 0; j < l; ++j) {
      const double diff = (x[i + j * d] - mu) / sd - s[j];
      acc += diff * diff;
    }
  }
  return std::sqrt(acc);
}

inline std::size_t checked_n_positions(const DilatedShapelet& s,
                                       const TimeSeries& x) {
  const std::size_t l = s.length();
  if (l < 2) throw ValidationError("shapelet length must be >= 2");
  if (s.reach() >= x.size()) {
    throw ShapeletTooLong("shapelet spans (l-1)*d = " +
                          std::to_string(s.reach()) +
                          " but series length is " + std::to_string(x.size()));
  }
  return x.size() - s.reach();
}

}  // namespace detail

// Distance vector f(S, X): one entry per admissible start position,
// length m - (l-1)*d. With dilation 1 this reduces exactly to the classical
// sliding Euclidean distance.
inline std::vector<double> distance_vector(const DilatedShapelet& s,
                                           const TimeSeries& x) {
  const std::size_t n_pos = detail::checked_n_positions(s, x);
  std::vector<double> f(n_pos);
  const double* xs = x.values.data();
  const double* sv = s.values.data();
  const std::size_t l = s.length();
  const std::size_t d = s.dilation;
  if (s.normalized) {
    for (std::size_t i = 0; i < n_pos; ++i) {
      f[i] = detail::position_distance_norm(xs, i, sv, l, d);
    }
  } else {
    for (std::size_t i = 0; i < n_pos; ++i) {
      f[i] = detail::position_distance_raw(xs, i, sv, l, d);
    }
  }
  return f;
}

// (min, argmin, occurrence count) of the distance vector, computed in a
// single pass without materializing it. Ties on the minimum keep the first
// index; the count uses strict f_i < lambda, so lambda = 0 never counts.
struct FeatureTriple {
  double min_dist = 0.0;
  std::size_t argmin_idx = 0;
  std::size_t occ_count = 0;
};

inline FeatureTriple extract_features(const DilatedShapelet& s,
                                      const TimeSeries& x) {
  const std::size_t n_pos = detail::checked_n_positions(s, x);
  const double* xs = x.values.data();
  const double* sv = s.values.data();
  const std::size_t l = s.length();
  const std::size_t d = s.dilation;
  const double lambda = s.lambda;

  FeatureTriple out;
  out.min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_pos; ++i) {
    const double f = s.normalized
                         ? detail::position_distance_norm(xs, i, sv, l, d)
                         : detail::position_distance_raw(xs, i, sv, l, d);
    if (f < out.min_dist) {
      out.min_dist = f;
      out.argmin_idx = i;
    }
    if (f < lambda) ++out.occ_count;
  }
  return out;
}

}  // namespace rdst
