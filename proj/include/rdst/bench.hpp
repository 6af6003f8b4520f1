#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rdst/dataset_io.hpp"
#include "rdst/evaluate.hpp"
#include "rdst/fileio.hpp"
#include "rdst/types.hpp"

namespace rdst {

// One-at-a-time sensitivity grid: each listed value yields one config that
// overrides a single field of the base config, all other fields default.
struct SweepGrid {
  std::vector<std::size_t> n_shapelets;
  std::vector<std::vector<std::size_t>> lengths;
  std::vector<double> p_norm;
  std::vector<std::pair<double, double>> percentiles;
};

namespace detail {

inline std::string lengths_id(const std::vector<std::size_t>& lengths) {
  std::string s;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i > 0) s += '+';
    s += std::to_string(lengths[i]);
  }
  return s;
}

inline std::string number_id(double v) {
  std::string s;
  append_double(s, v);
  return s;
}

}  // namespace detail

inline std::vector<std::pair<std::string, GenerationConfig>> expand_grid(
    const SweepGrid& grid, const GenerationConfig& base) {
  std::vector<std::pair<std::string, GenerationConfig>> configs;
  for (std::size_t v : grid.n_shapelets) {
    GenerationConfig c = base;
    c.n_shapelets = v;
    configs.emplace_back("n_shapelets=" + std::to_string(v), c);
  }
  for (const std::vector<std::size_t>& v : grid.lengths) {
    GenerationConfig c = base;
    c.lengths = v;
    configs.emplace_back("lengths=" + detail::lengths_id(v), c);
  }
  for (double v : grid.p_norm) {
    GenerationConfig c = base;
    c.p_norm = v;
    configs.emplace_back("p_norm=" + detail::number_id(v), c);
  }
  for (const auto& [p1, p2] : grid.percentiles) {
    GenerationConfig c = base;
    c.p1 = p1;
    c.p2 = p2;
    configs.emplace_back(
        "p=" + detail::number_id(p1) + "+" + detail::number_id(p2), c);
  }
  if (configs.empty()) configs.emplace_back("default", base);
  return configs;
}

struct SweepRecord {
  std::string config_id;
  std::string dataset;
  std::size_t resample = 0;
  double accuracy = 0.0;
  double fit_s = 0.0;
  double transform_s = 0.0;
  double predict_s = 0.0;
};

struct SweepResult {
  std::vector<std::pair<std::string, GenerationConfig>> configs;
  std::vector<std::string> dataset_names;
  std::vector<SweepRecord> records;
  // [dataset][config]; ranks use best accuracy = rank 1, ties averaged
  std::vector<std::vector<double>> mean_accuracy;
  std::vector<std::vector<double>> rank_matrix;
  std::vector<double> mean_ranks;
};

struct SweepOptions {
  GenerationConfig base;
  AlphaGrid grid = AlphaGrid::logspace();
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t n_resamples = 1;
  double train_fraction = 0.5;
};

namespace detail {

// Fractional ranking of accuracies, descending: position averages within
// exact-tie groups keep every row summing to k(k+1)/2.
inline std::vector<double> rank_descending(const std::vector<double>& acc) {
  const std::size_t k = acc.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&acc](std::size_t a,
                                                      std::size_t b) {
    return acc[a] > acc[b];
  });
  std::vector<double> ranks(k, 0.0);
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i;
    while (j + 1 < k && acc[order[j + 1]] == acc[order[i]]) ++j;
    const double shared =
        (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

// Every (config, dataset, resample) triple is evaluated exactly once, in a
// fixed sequential order so timings stay clean. Resample r splits the pool
// with seed+r for every config, so configs compare on identical splits.
inline SweepResult sweep(
    const SweepGrid& grid,
    const std::vector<std::pair<std::string, LabeledDataset>>& datasets,
    const SweepOptions& opt) {
  if (datasets.empty()) throw ConfigError("sweep needs at least one dataset");
  if (opt.n_resamples == 0) {
    throw ConfigError("n_resamples must be at least 1");
  }
  SweepResult result;
  result.configs = expand_grid(grid, opt.base);
  const std::size_t k = result.configs.size();

  for (const auto& [name, ds] : datasets) {
    result.dataset_names.push_back(name);
    std::vector<double> per_config_mean(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
      double acc_sum = 0.0;
      for (std::size_t r = 0; r < opt.n_resamples; ++r) {
        auto [train, test] =
            stratified_resample(ds, opt.train_fraction, opt.seed + r);
        const SplitOutcome outcome =
            run_split(train, test, result.configs[c].second, opt.seed + r,
                      opt.threads, opt.grid);
        acc_sum += outcome.accuracy;
        result.records.push_back({result.configs[c].first, name, r,
                                  outcome.accuracy, outcome.fit_s,
                                  outcome.transform_s, outcome.predict_s});
      }
      per_config_mean[c] = acc_sum / static_cast<double>(opt.n_resamples);
    }
    result.rank_matrix.push_back(detail::rank_descending(per_config_mean));
    result.mean_accuracy.push_back(std::move(per_config_mean));
  }

  result.mean_ranks.assign(k, 0.0);
  for (const std::vector<double>& row : result.rank_matrix) {
    for (std::size_t c = 0; c < k; ++c) result.mean_ranks[c] += row[c];
  }
  for (double& r : result.mean_ranks) {
    r /= static_cast<double>(result.rank_matrix.size());
  }
  return result;
}

inline std::string sweep_records_csv(const SweepResult& result) {
  std::string out = "config_id,dataset,resample,accuracy,fit_s,transform_s,"
                    "predict_s\n";
  for (const SweepRecord& rec : result.records) {
    out += rec.config_id;
    out += ',';
    out += rec.dataset;
    out += ',';
    out += std::to_string(rec.resample);
    for (double v : {rec.accuracy, rec.fit_s, rec.transform_s,
                     rec.predict_s}) {
      out += ',';
      detail::append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

inline std::string sweep_ranks_csv(const SweepResult& result) {
  std::string out = "config_id,mean_rank\n";
  for (std::size_t c = 0; c < result.configs.size(); ++c) {
    out += result.configs[c].first;
    out += ',';
    detail::append_double(out, result.mean_ranks[c]);
    out += '\n';
  }
  return out;
}

enum class ScaleAxis { n_series, series_length };

struct ScalPoint {
  std::size_t size = 0;
  double fit_s = 0.0;
  double transform_s = 0.0;
};

// Timing curve along one axis of the synthetic template. Each point fits on
// a generated train set and separately transforms an equally sized fresh
// set; both timings are averaged over `repeats` runs.
inline std::vector<ScalPoint> scalability(
    const SyntheticSpec& tmpl, ScaleAxis axis,
    const std::vector<std::size_t>& points, const GenerationConfig& config,
    std::uint64_t seed, unsigned threads = 0, std::size_t repeats = 3) {
  if (points.empty()) throw ConfigError("scalability needs at least 1 point");
  if (repeats == 0) throw ConfigError("repeats must be at least 1");
  std::vector<ScalPoint> curve;
  for (std::size_t p : points) {
    if (p == 0) throw ConfigError("scalability point must be positive");
    SyntheticSpec spec = tmpl;
    if (axis == ScaleAxis::n_series) {
      spec.n_per_class = std::max<std::size_t>(1, p / 2);
    } else {
      spec.length = p;
    }
    spec.seed = seed;
    const LabeledDataset train = make_synthetic(spec);
    SyntheticSpec probe_spec = spec;
    probe_spec.seed = seed + 1;
    const LabeledDataset probe = make_synthetic(probe_spec);

    ScalPoint point;
    point.size = axis == ScaleAxis::n_series ? train.size() : spec.length;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      detail::StopWatch fit_sw;
      const ModelArchive ar = fit_pipeline(train, config, seed, threads);
      point.fit_s += fit_sw.seconds();
      detail::StopWatch tr_sw;
      const FeatureMatrix features = transform(ar.bank, probe.series,
                                               threads);
      point.transform_s += tr_sw.seconds();
      if (features.rows != probe.size()) {
        throw Error("transform produced an unexpected row count");
      }
    }
    point.fit_s /= static_cast<double>(repeats);
    point.transform_s /= static_cast<double>(repeats);
    curve.push_back(point);
  }
  return curve;
}

inline std::string scalability_csv(const std::vector<ScalPoint>& curve) {
  std::string out = "size,fit_s,transform_s\n";
  for (const ScalPoint& p : curve) {
    out += std::to_string(p.size);
    out += ',';
    detail::append_double(out, p.fit_s);
    out += ',';
    detail::append_double(out, p.transform_s);
    out += '\n';
  }
  return out;
}

}  // namespace rdst
