#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rdst/errors.hpp"

namespace rdst {

// Population std below this is treated as a constant window or vector;
// z-normalization then maps it to all zeros.
inline constexpr double kDegenerateStd = 1e-8;

// ---------------------------------------------------------------------------
// Domain types. Plain value types; all validation lives in free functions so
// that invalid data can still be constructed and reported on.
// ---------------------------------------------------------------------------

struct TimeSeries {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
};

struct LabeledDataset {
  std::vector<TimeSeries> series;
  std::vector<int> labels;       // raw labels, aligned with series
  std::vector<int> class_table;  // sorted distinct raw labels
  std::vector<int> class_index;  // labels remapped to 0..C-1 via class_table

  std::size_t size() const noexcept { return series.size(); }
  std::size_t length() const noexcept {
    return series.empty() ? 0 : series.front().size();
  }
  std::size_t n_classes() const noexcept { return class_table.size(); }
};

// A shapelet with values spaced `dilation` steps apart when matched against
// a series. `lambda` is the occurrence threshold; `normalized` marks that
// values are z-scored and windows must be z-scored before comparison.
struct DilatedShapelet {
  std::vector<double> values;
  std::size_t dilation = 1;
  double lambda = 0.0;
  bool normalized = false;

  std::size_t length() const noexcept { return values.size(); }
  // Offset of the last sample read: (l-1)*d. Applicable to series with
  // m > reach().
  std::size_t reach() const noexcept {
    return values.empty() ? 0 : (values.size() - 1) * dilation;
  }
};

struct GenerationConfig {
  std::size_t n_shapelets = 10000;
  std::vector<std::size_t> lengths = {11};  // candidate shapelet lengths
  double p_norm = 0.8;  // probability a shapelet uses z-normalized distance
  double p1 = 5.0;      // lower percentile bound for lambda sampling
  double p2 = 10.0;     // upper percentile bound for lambda sampling
};

// Where a generated shapelet came from; enough to replay its lambda draw.
struct ShapeletProvenance {
  std::uint32_t source_series = 0;  // series the values were cut from
  std::uint32_t start_index = 0;    // start of the dilated cut
  std::uint32_t lambda_series = 0;  // same-class series used for lambda
  std::int32_t source_class = 0;    // class index (0..C-1) of the source
};

struct ShapeletBank {
  std::vector<DilatedShapelet> shapelets;
  std::vector<ShapeletProvenance> provenance;  // parallel to shapelets
  GenerationConfig config;
  std::uint64_t seed = 0;
  std::size_t train_length = 0;

  std::size_t size() const noexcept { return shapelets.size(); }
};

// Row-major n x (3 * n_shapelets) matrix. Shapelet k owns columns
// (3k, 3k+1, 3k+2) = (min, argmin, occurrence count); argmin and the count
// are stored as exact integer-valued doubles.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  static FeatureMatrix zeros(std::size_t rows, std::size_t cols) {
    return FeatureMatrix{rows, cols, std::vector<double>(rows * cols, 0.0)};
  }

  double& at(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const noexcept {
    return data[r * cols + c];
  }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data.data() + r * cols, cols};
  }
};

// One-vs-rest ridge model over standardized features. feature_stds[j] == 0
// flags a constant column: it is kept in the layout, standardizes to 0 and
// carries zero weight.
struct RidgeModel {
  std::vector<std::vector<double>> weights;  // [class][feature]
  std::vector<double> intercepts;            // [class]
  std::vector<double> feature_means;
  std::vector<double> feature_stds;
  double alpha = 1.0;                 // selected regularization strength
  std::vector<int> class_table;       // sorted raw labels
  std::vector<double> cv_errors;      // aggregate LOO error per grid alpha

  std::size_t n_classes() const noexcept { return class_table.size(); }
  std::size_t n_features() const noexcept { return feature_means.size(); }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
  enum class Code {
    label_count_mismatch,
    empty_dataset,
    too_few_series,
    series_too_short,
    unequal_lengths,
    non_finite_value,
    too_few_classes,
    singleton_class,
  };
  Code code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const noexcept { return errors.empty(); }

  std::string joined_errors() const {
    std::string out;
    for (const auto& issue : errors) {
      if (!out.empty()) out += "; ";
      out += issue.message;
    }
    return out;
  }
};

// Builds class_table / class_index from raw labels. Throws ValidationError
// only on structural impossibilities; everything else is left to
// validate_dataset so problems can be reported rather than thrown.
inline LabeledDataset make_dataset(std::vector<TimeSeries> series,
                                   std::vector<int> labels) {
  if (series.size() != labels.size()) {
    throw ValidationError("dataset has " + std::to_string(series.size()) +
                          " series but " + std::to_string(labels.size()) +
                          " labels");
  }
  if (series.empty()) throw ValidationError("dataset is empty");

  LabeledDataset ds;
  ds.series = std::move(series);
  ds.labels = std::move(labels);
  ds.class_table = ds.labels;
  std::sort(ds.class_table.begin(), ds.class_table.end());
  ds.class_table.erase(
      std::unique(ds.class_table.begin(), ds.class_table.end()),
      ds.class_table.end());
  ds.class_index.resize(ds.labels.size());
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    const auto it = std::lower_bound(ds.class_table.begin(),
                                     ds.class_table.end(), ds.labels[i]);
    ds.class_index[i] = static_cast<int>(it - ds.class_table.begin());
  }
  return ds;
}

// Checks the full set of training invariants. Singleton classes are legal
// for fitting but break resampling, so they are reported as warnings.
inline ValidationReport validate_dataset(const LabeledDataset& ds) {
  using Code = ValidationIssue::Code;
  ValidationReport report;
  auto error = [&](Code code, std::string msg) {
    report.errors.push_back({code, std::move(msg)});
  };

  if (ds.series.size() != ds.labels.size()) {
    error(Code::label_count_mismatch,
          "series/label count mismatch: " + std::to_string(ds.series.size()) +
              " vs " + std::to_string(ds.labels.size()));
    return report;
  }
  if (ds.series.empty()) {
    error(Code::empty_dataset, "dataset is empty");
    return report;
  }
  if (ds.series.size() < 2) {
    error(Code::too_few_series, "need at least 2 series, got " +
                                    std::to_string(ds.series.size()));
  }

  const std::size_t m = ds.series.front().size();
  if (m < 2) {
    error(Code::series_too_short,
          "series length must be >= 2, got " + std::to_string(m));
  }
  for (std::size_t i = 0; i < ds.series.size(); ++i) {
    if (ds.series[i].size() != m) {
      error(Code::unequal_lengths,
            "series " + std::to_string(i) + " has length " +
                std::to_string(ds.series[i].size()) + ", expected " +
                std::to_string(m));
      break;
    }
  }
  for (std::size_t i = 0; i < ds.series.size(); ++i) {
    bool bad = false;
    for (double v : ds.series[i].values) {
      if (!std::isfinite(v)) {
        error(Code::non_finite_value,
              "series " + std::to_string(i) + " contains a non-finite value");
        bad = true;
        break;
      }
    }
    if (bad) break;
  }

  if (ds.class_table.size() < 2) {
    error(Code::too_few_classes, "need at least 2 classes, got " +
                                     std::to_string(ds.class_table.size()));
  }
  for (std::size_t c = 0; c < ds.class_table.size(); ++c) {
    const auto members = static_cast<std::size_t>(
        std::count(ds.class_index.begin(), ds.class_index.end(),
                   static_cast<int>(c)));
    if (members == 1) {
      report.warnings.push_back(
          {Code::singleton_class, "class " + std::to_string(ds.class_table[c]) +
                                      " has a single member"});
    }
  }
  return report;
}

inline void require_valid_for_training(const LabeledDataset& ds) {
  const ValidationReport report = validate_dataset(ds);
  if (!report.ok()) {
    throw ValidationError("invalid training dataset: " +
                          report.joined_errors());
  }
}

inline void validate_shapelet(const DilatedShapelet& s) {
  if (s.values.size() < 2) {
    throw ValidationError("shapelet length must be >= 2, got " +
                          std::to_string(s.values.size()));
  }
  if (s.dilation < 1) throw ValidationError("shapelet dilation must be >= 1");
  if (!(s.lambda >= 0.0)) {
    throw ValidationError("shapelet lambda must be non-negative");
  }
  for (double v : s.values) {
    if (!std::isfinite(v)) {
      throw ValidationError("shapelet contains a non-finite value");
    }
  }
  if (s.normalized) {
    double sum = 0.0;
    for (double v : s.values) sum += v;
    const double mu = sum / static_cast<double>(s.values.size());
    double ss = 0.0;
    for (double v : s.values) ss += (v - mu) * (v - mu);
    const double sd = std::sqrt(ss / static_cast<double>(s.values.size()));
    const bool degenerate =
        std::all_of(s.values.begin(), s.values.end(),
                    [](double v) { return v == 0.0; });
    if (!degenerate && (std::abs(mu) > 1e-9 || std::abs(sd - 1.0) > 1e-9)) {
      throw ValidationError("normalized shapelet values are not z-scored");
    }
  }
}

inline void validate_config(const GenerationConfig& cfg,
                            std::size_t series_length) {
  if (cfg.n_shapelets == 0) {
    throw ConfigError("n_shapelets must be positive");
  }
  if (cfg.lengths.empty()) throw ConfigError("length set must be non-empty");
  for (std::size_t l : cfg.lengths) {
    if (l < 2) throw ConfigError("shapelet lengths must be >= 2");
    if (l > series_length) {
      throw ConfigError("shapelet length " + std::to_string(l) +
                        " exceeds series length " +
                        std::to_string(series_length));
    }
  }
  if (!(cfg.p_norm >= 0.0 && cfg.p_norm <= 1.0)) {
    throw ConfigError("p_norm must be in [0, 1]");
  }
  if (!(cfg.p1 >= 0.0 && cfg.p1 <= 100.0) ||
      !(cfg.p2 >= 0.0 && cfg.p2 <= 100.0)) {
    throw ConfigError("percentile bounds must be in [0, 100]");
  }
  if (cfg.p1 > cfg.p2) {
    throw ConfigError("percentile bounds must satisfy p1 <= p2");
  }
}

}  // namespace rdst
