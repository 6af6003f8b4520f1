#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rdst/distance.hpp"
#include "rdst/parallel.hpp"
#include "rdst/rng.hpp"
#include "rdst/stats.hpp"
#include "rdst/types.hpp"

namespace rdst {

// Random shapelet generation. Each shapelet draws, in this order:
//   length -> dilation -> normalization coin -> source series + start
//   -> lambda series + lambda quantile.
// All draws for shapelet k come from RngStream(seed, k), so the bank is a
// pure function of (dataset, config, seed) at any parallelism degree.

inline std::size_t sample_length(RngStream& rng, const GenerationConfig& cfg) {
  return cfg.lengths[rng.next_below(cfg.lengths.size())];
}

// d = floor(2^x) with x ~ Uniform[0, log2(m/l)]. This keeps d in [1, m/l],
// hence (l-1)*d < m for every draw.
inline std::size_t sample_dilation(RngStream& rng, std::size_t l,
                                   std::size_t m) {
  const double upper =
      std::log2(static_cast<double>(m) / static_cast<double>(l));
  const double x = rng.uniform(0.0, upper);
  const auto d = static_cast<std::size_t>(std::exp2(x));
  return d < 1 ? 1 : d;
}

struct ValueDraw {
  std::vector<double> values;
  std::size_t series_index = 0;
  std::size_t start_index = 0;
  int source_class = 0;  // class index, 0..C-1
};

// Cuts a dilated subsequence from a uniformly chosen training series at a
// uniform admissible start. Normalized shapelets store z-scored values.
inline ValueDraw sample_values(RngStream& rng, const LabeledDataset& ds,
                               std::size_t l, std::size_t d, bool normalized) {
  ValueDraw draw;
  draw.series_index = rng.next_below(ds.size());
  const TimeSeries& x = ds.series[draw.series_index];
  const std::size_t n_pos = x.size() - (l - 1) * d;
  draw.start_index = rng.next_below(n_pos);
  draw.values.resize(l);
  for (std::size_t j = 0; j < l; ++j) {
    draw.values[j] = x[draw.start_index + j * d];
  }
  if (normalized) draw.values = znormalize(draw.values);
  draw.source_class = ds.class_index[draw.series_index];
  return draw;
}

// lambda ~ Uniform[q(p1), q(p2)] over the distance vector between the
// shapelet and a uniformly chosen series of the given class (the source
// series itself is eligible).
inline double sample_lambda(RngStream& rng, const DilatedShapelet& shapelet,
                            const LabeledDataset& ds, int source_class,
                            double p1, double p2,
                            std::size_t* lambda_series = nullptr) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.class_index[i] == source_class) members.push_back(i);
  }
  const std::size_t pick = members[rng.next_below(members.size())];
  if (lambda_series) *lambda_series = pick;

  std::vector<double> f = distance_vector(shapelet, ds.series[pick]);
  std::sort(f.begin(), f.end());
  const double lo = percentile_sorted(f, p1);
  const double hi = percentile_sorted(f, p2);
  return rng.uniform(lo, hi);
}

inline ShapeletBank generate_bank(const LabeledDataset& ds,
                                  const GenerationConfig& cfg,
                                  std::uint64_t seed, unsigned threads = 0) {
  require_valid_for_training(ds);
  validate_config(cfg, ds.length());

  const std::size_t m = ds.length();
  ShapeletBank bank;
  bank.config = cfg;
  bank.seed = seed;
  bank.train_length = m;
  bank.shapelets.resize(cfg.n_shapelets);
  bank.provenance.resize(cfg.n_shapelets);

  parallel_for(cfg.n_shapelets, threads, [&](std::size_t begin,
                                             std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      RngStream rng(seed, k);
      const std::size_t l = sample_length(rng, cfg);
      const std::size_t d = sample_dilation(rng, l, m);
      const bool normalized = rng.bernoulli(cfg.p_norm);
      ValueDraw draw = sample_values(rng, ds, l, d, normalized);

      DilatedShapelet s;
      s.values = std::move(draw.values);
      s.dilation = d;
      s.normalized = normalized;
      std::size_t lambda_series = 0;
      s.lambda = sample_lambda(rng, s, ds, draw.source_class, cfg.p1, cfg.p2,
                               &lambda_series);

      bank.shapelets[k] = std::move(s);
      bank.provenance[k] = {static_cast<std::uint32_t>(draw.series_index),
                            static_cast<std::uint32_t>(draw.start_index),
                            static_cast<std::uint32_t>(lambda_series),
                            draw.source_class};
    }
  });
  return bank;
}

}  // namespace rdst
