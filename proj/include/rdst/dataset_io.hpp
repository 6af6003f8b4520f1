#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdst/errors.hpp"
#include "rdst/fileio.hpp"
#include "rdst/rng.hpp"
#include "rdst/types.hpp"

namespace rdst {

namespace detail {

inline bool parse_int_token(std::string_view tok, int& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline bool parse_double_token(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

// Label-first tab-separated rows, no header. Labels are taken verbatim when
// every token parses as an integer, otherwise distinct tokens are mapped to
// 0..K-1 by sorted order.
inline LabeledDataset parse_tsv(std::string_view text,
                                const std::string& origin = "<memory>") {
  std::vector<TimeSeries> series;
  std::vector<std::string> label_tokens;
  std::size_t expected_values = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    TimeSeries ts;
    std::size_t field = 0;
    std::size_t fpos = 0;
    while (true) {
      std::size_t tab = line.find('\t', fpos);
      const std::string_view tok =
          line.substr(fpos, tab == std::string_view::npos ? tab : tab - fpos);
      if (field == 0) {
        if (tok.empty()) {
          throw ParseError(origin, line_no, fpos + 1, "empty label");
        }
        label_tokens.emplace_back(tok);
      } else {
        double v = 0.0;
        if (!detail::parse_double_token(tok, v)) {
          throw ParseError(origin, line_no, fpos + 1,
                           "cannot parse value '" + std::string(tok) + "'");
        }
        if (!std::isfinite(v)) {
          throw ParseError(origin, line_no, fpos + 1,
                           "non-finite value '" + std::string(tok) + "'");
        }
        ts.values.push_back(v);
      }
      ++field;
      if (tab == std::string_view::npos) break;
      fpos = tab + 1;
    }
    if (ts.values.empty()) {
      throw ParseError(origin, line_no, 1, "row has a label but no values");
    }
    if (expected_values == 0) {
      expected_values = ts.values.size();
    } else if (ts.values.size() != expected_values) {
      throw ParseError(origin, line_no, 1,
                       "row has " + std::to_string(ts.values.size()) +
                           " values, expected " +
                           std::to_string(expected_values));
    }
    series.push_back(std::move(ts));
  }

  std::vector<int> labels(label_tokens.size());
  bool all_int = true;
  for (std::size_t i = 0; i < label_tokens.size(); ++i) {
    if (!detail::parse_int_token(label_tokens[i], labels[i])) {
      all_int = false;
      break;
    }
  }
  if (!all_int) {
    std::vector<std::string> table = label_tokens;
    std::sort(table.begin(), table.end());
    table.erase(std::unique(table.begin(), table.end()), table.end());
    for (std::size_t i = 0; i < label_tokens.size(); ++i) {
      labels[i] = static_cast<int>(
          std::lower_bound(table.begin(), table.end(), label_tokens[i]) -
          table.begin());
    }
  }
  return make_dataset(std::move(series), std::move(labels));
}

inline std::string format_tsv(const LabeledDataset& ds) {
  std::string out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out += std::to_string(ds.labels[i]);
    for (double v : ds.series[i].values) {
      out += '\t';
      detail::append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

inline LabeledDataset load_tsv(const std::string& path) {
  return parse_tsv(read_file(path), path);
}

inline void save_tsv(const std::string& path, const LabeledDataset& ds) {
  write_file(path, format_tsv(ds));
}

// Two-class synthetic task: Gaussian noise everywhere, plus a fixed dilated
// sine bump added to class-1 series at a random admissible start.
struct SyntheticSpec {
  std::size_t n_per_class = 50;
  std::size_t length = 256;
  std::size_t pattern_length = 11;
  std::size_t pattern_dilation = 4;
  double noise_std = 0.2;
  std::uint64_t seed = 0;
};

inline void validate_synthetic_spec(const SyntheticSpec& spec) {
  if (spec.n_per_class == 0) throw ConfigError("n_per_class must be positive");
  if (spec.length < 2) throw ConfigError("series length must be at least 2");
  if (spec.pattern_length < 2) {
    throw ConfigError("pattern_length must be at least 2");
  }
  if (spec.pattern_dilation == 0) {
    throw ConfigError("pattern_dilation must be positive");
  }
  if (!(spec.noise_std >= 0.0)) {
    throw ConfigError("noise_std must be non-negative");
  }
  if ((spec.pattern_length - 1) * spec.pattern_dilation >= spec.length) {
    throw ConfigError("dilated pattern reach " +
                      std::to_string((spec.pattern_length - 1) *
                                     spec.pattern_dilation) +
                      " does not fit in series length " +
                      std::to_string(spec.length));
  }
}

inline std::vector<double> synthetic_pattern(std::size_t pattern_length) {
  std::vector<double> p(pattern_length);
  for (std::size_t j = 0; j < pattern_length; ++j) {
    p[j] = 2.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(j) /
                          static_cast<double>(pattern_length - 1));
  }
  return p;
}

inline LabeledDataset make_synthetic(const SyntheticSpec& spec) {
  validate_synthetic_spec(spec);
  const std::vector<double> pattern = synthetic_pattern(spec.pattern_length);
  const std::size_t reach = (spec.pattern_length - 1) * spec.pattern_dilation;
  const std::size_t n_total = 2 * spec.n_per_class;

  std::vector<TimeSeries> series(n_total);
  std::vector<int> labels(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    RngStream rng(spec.seed, i);
    TimeSeries& ts = series[i];
    ts.values.resize(spec.length);
    for (std::size_t t = 0; t < spec.length; ++t) {
      ts.values[t] = spec.noise_std * rng.gaussian();
    }
    const int label = i < spec.n_per_class ? 0 : 1;
    labels[i] = label;
    if (label == 1) {
      const std::size_t start = static_cast<std::size_t>(
          rng.next_below(static_cast<std::uint64_t>(spec.length - reach)));
      for (std::size_t j = 0; j < spec.pattern_length; ++j) {
        ts.values[start + j * spec.pattern_dilation] += pattern[j];
      }
    }
  }
  return make_dataset(std::move(series), std::move(labels));
}

// Per-class split: shuffle each class's members with its own stream, put the
// first round(fraction * count) in train (clamped so both sides get at least
// one member), keep dataset order within each side.
inline std::pair<LabeledDataset, LabeledDataset> stratified_resample(
    const LabeledDataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train_fraction must be in (0, 1)");
  }
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t c = 0; c < ds.class_table.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (static_cast<std::size_t>(ds.class_index[i]) == c) {
        members.push_back(i);
      }
    }
    if (members.size() < 2) {
      throw ConfigError("class " + std::to_string(ds.class_table[c]) +
                        " has " + std::to_string(members.size()) +
                        " members, cannot split into train and test");
    }
    RngStream rng(seed, c);
    for (std::size_t i = members.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(
          rng.next_below(static_cast<std::uint64_t>(i + 1)));
      std::swap(members[i], members[j]);
    }
    const auto want = static_cast<std::size_t>(std::llround(
        train_fraction * static_cast<double>(members.size())));
    const std::size_t k =
        std::clamp<std::size_t>(want, 1, members.size() - 1);
    train_idx.insert(train_idx.end(), members.begin(), members.begin() + k);
    test_idx.insert(test_idx.end(), members.begin() + k, members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  auto take = [&ds](const std::vector<std::size_t>& idx) {
    std::vector<TimeSeries> series;
    std::vector<int> labels;
    series.reserve(idx.size());
    labels.reserve(idx.size());
    for (std::size_t i : idx) {
      series.push_back(ds.series[i]);
      labels.push_back(ds.labels[i]);
    }
    return make_dataset(std::move(series), std::move(labels));
  };
  return {take(train_idx), take(test_idx)};
}

}  // namespace rdst
