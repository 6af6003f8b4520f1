#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "rdst/distance.hpp"
#include "rdst/fileio.hpp"
#include "rdst/parallel.hpp"
#include "rdst/types.hpp"

namespace rdst {

namespace detail {

inline void check_lengths(const ShapeletBank& bank,
                          const std::vector<TimeSeries>& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].size() != bank.train_length) {
      throw LengthMismatch("series " + std::to_string(i) + " has length " +
                           std::to_string(series[i].size()) +
                           ", bank expects " +
                           std::to_string(bank.train_length));
    }
  }
}

}  // namespace detail

// Applies every shapelet to every series. Row i, shapelet k fills columns
// (3k, 3k+1, 3k+2) with (min, argmin, occurrence count). Work is split over
// (series, shapelet) cells and each cell is written by exactly one task, so
// the output bytes do not depend on the thread count.
inline FeatureMatrix transform(const ShapeletBank& bank,
                               const std::vector<TimeSeries>& series,
                               unsigned threads = 0) {
  detail::check_lengths(bank, series);
  const std::size_t n = series.size();
  const std::size_t k_total = bank.size();
  FeatureMatrix out = FeatureMatrix::zeros(n, 3 * k_total);

  parallel_for(n * k_total, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t cell = begin; cell < end; ++cell) {
      const std::size_t i = cell / k_total;
      const std::size_t k = cell % k_total;
      const FeatureTriple t = extract_features(bank.shapelets[k], series[i]);
      double* row = out.data.data() + i * out.cols + 3 * k;
      row[0] = t.min_dist;
      row[1] = static_cast<double>(t.argmin_idx);
      row[2] = static_cast<double>(t.occ_count);
    }
  });
  return out;
}

inline FeatureMatrix transform(const ShapeletBank& bank,
                               const LabeledDataset& ds, unsigned threads = 0) {
  return transform(bank, ds.series, threads);
}

// CSV emission with header s{k}_min,s{k}_argmin,s{k}_so. Values use
// shortest round-trip formatting.
inline void write_features_csv(const FeatureMatrix& features,
                               std::ostream& os) {
  std::string line;
  const std::size_t k_total = features.cols / 3;
  for (std::size_t k = 0; k < k_total; ++k) {
    if (k > 0) line += ',';
    const std::string id = std::to_string(k);
    line += "s" + id + "_min,s" + id + "_argmin,s" + id + "_so";
  }
  line += '\n';
  os << line;
  for (std::size_t r = 0; r < features.rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < features.cols; ++c) {
      if (c > 0) line += ',';
      detail::append_double(line, features.at(r, c));
    }
    line += '\n';
    os << line;
  }
}

}  // namespace rdst
