#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdst/archive.hpp"
#include "rdst/dataset_io.hpp"
#include "rdst/ridge.hpp"
#include "rdst/sampler.hpp"
#include "rdst/transform.hpp"
#include "rdst/types.hpp"

namespace rdst {

namespace detail {

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// One train/test pass: generate the bank, transform both splits, fit the
// ridge head, predict. Timings are wall clock per stage; fit_s covers the
// whole training side.
struct SplitOutcome {
  ModelArchive archive;
  std::vector<int> predictions;
  double accuracy = 0.0;
  double fit_s = 0.0;
  double transform_s = 0.0;
  double predict_s = 0.0;
};

inline ModelArchive fit_pipeline(const LabeledDataset& train,
                                 const GenerationConfig& config,
                                 std::uint64_t seed, unsigned threads = 0,
                                 const AlphaGrid& grid = AlphaGrid::logspace()) {
  ModelArchive ar;
  ar.bank = generate_bank(train, config, seed, threads);
  const FeatureMatrix features = transform(ar.bank, train.series, threads);
  ar.model = fit_ridge(features, train.labels, grid);
  return ar;
}

inline SplitOutcome run_split(const LabeledDataset& train,
                              const LabeledDataset& test,
                              const GenerationConfig& config,
                              std::uint64_t seed, unsigned threads = 0,
                              const AlphaGrid& grid = AlphaGrid::logspace()) {
  SplitOutcome out;
  {
    detail::StopWatch sw;
    out.archive = fit_pipeline(train, config, seed, threads, grid);
    out.fit_s = sw.seconds();
  }
  FeatureMatrix test_features;
  {
    detail::StopWatch sw;
    test_features = transform(out.archive.bank, test.series, threads);
    out.transform_s = sw.seconds();
  }
  {
    detail::StopWatch sw;
    out.predictions = predict(out.archive.model, test_features);
    out.predict_s = sw.seconds();
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (out.predictions[i] == test.labels[i]) ++hits;
  }
  out.accuracy = test.size() == 0
                     ? 0.0
                     : static_cast<double>(hits) /
                           static_cast<double>(test.size());
  return out;
}

struct EvaluateOptions {
  GenerationConfig config;
  AlphaGrid grid = AlphaGrid::logspace();
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t n_resamples = 1;
  double train_fraction = 0.5;
};

// Resample 0 is the given split as-is; resample r >= 1 pools train+test and
// re-splits with seed+r, so repeated evaluation mirrors resampled protocols
// while the default single pass scores the original split.
inline nlohmann::json evaluate(const LabeledDataset& train,
                               const LabeledDataset& test,
                               const EvaluateOptions& opt) {
  if (opt.n_resamples == 0) {
    throw ConfigError("n_resamples must be at least 1");
  }
  LabeledDataset pool;
  if (opt.n_resamples > 1) {
    std::vector<TimeSeries> series = train.series;
    series.insert(series.end(), test.series.begin(), test.series.end());
    std::vector<int> labels = train.labels;
    labels.insert(labels.end(), test.labels.begin(), test.labels.end());
    pool = make_dataset(std::move(series), std::move(labels));
  }

  nlohmann::json resamples = nlohmann::json::array();
  std::vector<double> accuracies;
  for (std::size_t r = 0; r < opt.n_resamples; ++r) {
    SplitOutcome outcome;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    if (r == 0) {
      outcome = run_split(train, test, opt.config, opt.seed, opt.threads,
                          opt.grid);
      n_train = train.size();
      n_test = test.size();
    } else {
      auto [rtrain, rtest] =
          stratified_resample(pool, opt.train_fraction, opt.seed + r);
      outcome = run_split(rtrain, rtest, opt.config, opt.seed + r,
                          opt.threads, opt.grid);
      n_train = rtrain.size();
      n_test = rtest.size();
    }
    accuracies.push_back(outcome.accuracy);
    resamples.push_back({{"resample", r},
                         {"accuracy", outcome.accuracy},
                         {"fit_s", outcome.fit_s},
                         {"transform_s", outcome.transform_s},
                         {"predict_s", outcome.predict_s},
                         {"n_train", n_train},
                         {"n_test", n_test},
                         {"alpha", outcome.archive.model.alpha}});
  }

  return {{"n_resamples", opt.n_resamples},
          {"train_fraction", opt.train_fraction},
          {"seed", opt.seed},
          {"config",
           {{"n_shapelets", opt.config.n_shapelets},
            {"lengths", opt.config.lengths},
            {"p_norm", opt.config.p_norm},
            {"p1", opt.config.p1},
            {"p2", opt.config.p2}}},
          {"resamples", std::move(resamples)},
          {"accuracy_mean", mean(accuracies)},
          {"accuracy_std", population_std(accuracies)}};
}

}  // namespace rdst
