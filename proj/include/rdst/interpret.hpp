#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdst/distance.hpp"
#include "rdst/errors.hpp"
#include "rdst/fileio.hpp"
#include "rdst/stats.hpp"
#include "rdst/types.hpp"

namespace rdst {

enum class FeatureKind { min = 0, argmin = 1, so = 2 };

inline const char* feature_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::min:
      return "min";
    case FeatureKind::argmin:
      return "argmin";
    default:
      return "so";
  }
}

struct RankedFeature {
  std::size_t shapelet = 0;
  FeatureKind feature = FeatureKind::min;
  double weight = 0.0;
  // raw-unit statistics of the feature column, so the standardized weight
  // can be mapped back to raw feature scale
  double feature_mean = 0.0;
  double feature_std = 0.0;
};

namespace detail {

inline void check_compatible(const RidgeModel& model,
                             const ShapeletBank& bank) {
  if (model.n_features() != 3 * bank.shapelets.size()) {
    throw DimensionMismatch("model has " + std::to_string(model.n_features()) +
                            " features, bank of " +
                            std::to_string(bank.shapelets.size()) +
                            " shapelets yields " +
                            std::to_string(3 * bank.shapelets.size()));
  }
}

inline std::size_t class_position(const RidgeModel& model, int class_id) {
  const auto it = std::find(model.class_table.begin(),
                            model.class_table.end(), class_id);
  if (it == model.class_table.end()) {
    throw UnknownClass("class " + std::to_string(class_id) +
                       " is not in the model's class table");
  }
  return static_cast<std::size_t>(it - model.class_table.begin());
}

}  // namespace detail

// All 3 * n_shapelets (shapelet, feature, weight) triples for one class,
// sorted by descending weight; ties fall back to ascending feature column,
// so the order is fully deterministic.
inline std::vector<RankedFeature> rank_shapelets(const RidgeModel& model,
                                                 const ShapeletBank& bank,
                                                 int class_id) {
  detail::check_compatible(model, bank);
  const std::size_t c = detail::class_position(model, class_id);
  const std::vector<double>& w = model.weights[c];
  std::vector<RankedFeature> ranked(w.size());
  for (std::size_t col = 0; col < w.size(); ++col) {
    ranked[col] = {col / 3, static_cast<FeatureKind>(col % 3), w[col],
                   model.feature_means[col], model.feature_stds[col]};
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedFeature& a, const RankedFeature& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              const std::size_t ca = a.shapelet * 3 +
                                     static_cast<std::size_t>(a.feature);
              const std::size_t cb = b.shapelet * 3 +
                                     static_cast<std::size_t>(b.feature);
              return ca < cb;
            });
  return ranked;
}

// Best-match placement of one shapelet on one series: the argmin start, the
// l sample positions argmin + j*d it reads, and the shapelet values mapped
// into the series' scale (identity for raw shapelets, affine de-normalization
// by the matched window's mean/std for normalized ones).
struct Placement {
  std::size_t argmin = 0;
  double min_dist = 0.0;
  std::vector<std::size_t> positions;
  std::vector<double> aligned_values;
  bool normalized = false;
  double window_mean = 0.0;
  double window_std = 0.0;
};

inline Placement locate_on_series(const DilatedShapelet& s,
                                  const TimeSeries& x) {
  const FeatureTriple f = extract_features(s, x);
  Placement p;
  p.argmin = f.argmin_idx;
  p.min_dist = f.min_dist;
  p.normalized = s.normalized;
  const std::size_t l = s.length();
  p.positions.resize(l);
  for (std::size_t j = 0; j < l; ++j) {
    p.positions[j] = p.argmin + j * s.dilation;
  }
  if (!s.normalized) {
    p.aligned_values = s.values;
    return p;
  }
  std::vector<double> window(l);
  for (std::size_t j = 0; j < l; ++j) window[j] = x.values[p.positions[j]];
  p.window_mean = mean(window);
  p.window_std = population_std(window);
  p.aligned_values.resize(l);
  const double scale = p.window_std < kDegenerateStd ? 0.0 : p.window_std;
  for (std::size_t j = 0; j < l; ++j) {
    p.aligned_values[j] = s.values[j] * scale + p.window_mean;
  }
  return p;
}

// Weight distribution of one group of feature columns: the signed weights in
// column order plus mean/quartiles of both the signed and absolute values.
struct GroupStats {
  std::string key;
  std::vector<double> weights;
  double mean = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double abs_mean = 0.0;
  double abs_q25 = 0.0;
  double abs_q50 = 0.0;
  double abs_q75 = 0.0;
};

struct ClassSummary {
  int class_id = 0;
  std::vector<GroupStats> by_feature;
  std::vector<GroupStats> by_dilation;
  std::vector<GroupStats> by_length;
  std::vector<GroupStats> by_normalized;
};

struct GlobalSummary {
  std::vector<ClassSummary> classes;
};

namespace detail {

inline GroupStats finish_group(std::string key, std::vector<double> weights) {
  GroupStats g;
  g.key = std::move(key);
  g.mean = rdst::mean(weights);
  g.q25 = percentile(weights, 25.0);
  g.q50 = percentile(weights, 50.0);
  g.q75 = percentile(weights, 75.0);
  std::vector<double> mags(weights.size());
  std::transform(weights.begin(), weights.end(), mags.begin(),
                 [](double w) { return std::abs(w); });
  g.abs_mean = rdst::mean(mags);
  g.abs_q25 = percentile(mags, 25.0);
  g.abs_q50 = percentile(mags, 50.0);
  g.abs_q75 = percentile(mags, 75.0);
  g.weights = std::move(weights);
  return g;
}

template <typename KeyOf>
std::vector<GroupStats> group_weights(const std::vector<double>& w,
                                      KeyOf&& key_of) {
  std::map<std::string, std::vector<double>> groups;
  for (std::size_t col = 0; col < w.size(); ++col) {
    groups[key_of(col)].push_back(w[col]);
  }
  std::vector<GroupStats> out;
  out.reserve(groups.size());
  for (auto& [key, weights] : groups) {
    out.push_back(finish_group(key, std::move(weights)));
  }
  return out;
}

inline std::string pad_number(std::size_t v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace detail

// Per-class weight distributions grouped by feature kind, dilation, length
// and normalization flag. Every weight lands in exactly one group per table.
inline GlobalSummary global_summary(const RidgeModel& model,
                                    const ShapeletBank& bank) {
  detail::check_compatible(model, bank);
  std::size_t max_d = 1;
  std::size_t max_l = 2;
  for (const DilatedShapelet& s : bank.shapelets) {
    max_d = std::max(max_d, s.dilation);
    max_l = std::max(max_l, s.length());
  }
  const int dw = static_cast<int>(std::to_string(max_d).size());
  const int lw = static_cast<int>(std::to_string(max_l).size());

  GlobalSummary summary;
  for (std::size_t c = 0; c < model.class_table.size(); ++c) {
    const std::vector<double>& w = model.weights[c];
    ClassSummary cs;
    cs.class_id = model.class_table[c];
    cs.by_feature = detail::group_weights(w, [](std::size_t col) {
      return std::string(feature_name(static_cast<FeatureKind>(col % 3)));
    });
    // keys are zero-padded so lexicographic group order is numeric order
    cs.by_dilation = detail::group_weights(w, [&](std::size_t col) {
      return "d=" + detail::pad_number(bank.shapelets[col / 3].dilation, dw);
    });
    cs.by_length = detail::group_weights(w, [&](std::size_t col) {
      return "l=" + detail::pad_number(bank.shapelets[col / 3].length(), lw);
    });
    cs.by_normalized = detail::group_weights(w, [&](std::size_t col) {
      return bank.shapelets[col / 3].normalized ? std::string("normalized")
                                                : std::string("raw");
    });
    summary.classes.push_back(std::move(cs));
  }
  return summary;
}

// JSON / CSV emission. All artifacts are deterministic byte-for-byte:
// object keys serialize alphabetically and floats use shortest round-trip.

inline nlohmann::json ranking_to_json(const RidgeModel& model,
                                      const ShapeletBank& bank, int class_id) {
  const auto ranked = rank_shapelets(model, bank, class_id);
  nlohmann::json entries = nlohmann::json::array();
  for (const RankedFeature& r : ranked) {
    const DilatedShapelet& s = bank.shapelets[r.shapelet];
    entries.push_back({{"shapelet", r.shapelet},
                       {"feature", feature_name(r.feature)},
                       {"weight", r.weight},
                       {"length", s.length()},
                       {"dilation", s.dilation},
                       {"normalized", s.normalized},
                       {"lambda", s.lambda},
                       {"feature_mean", r.feature_mean},
                       {"feature_std", r.feature_std}});
  }
  return {{"class", class_id}, {"entries", std::move(entries)}};
}

inline std::string ranking_to_csv(const RidgeModel& model,
                                  const ShapeletBank& bank, int class_id) {
  const auto ranked = rank_shapelets(model, bank, class_id);
  std::string out =
      "shapelet,feature,weight,length,dilation,normalized,lambda,"
      "feature_mean,feature_std\n";
  for (const RankedFeature& r : ranked) {
    const DilatedShapelet& s = bank.shapelets[r.shapelet];
    out += std::to_string(r.shapelet);
    out += ',';
    out += feature_name(r.feature);
    out += ',';
    detail::append_double(out, r.weight);
    out += ',';
    out += std::to_string(s.length());
    out += ',';
    out += std::to_string(s.dilation);
    out += ',';
    out += s.normalized ? "true" : "false";
    out += ',';
    detail::append_double(out, s.lambda);
    out += ',';
    detail::append_double(out, r.feature_mean);
    out += ',';
    detail::append_double(out, r.feature_std);
    out += '\n';
  }
  return out;
}

namespace detail {

inline nlohmann::json group_to_json(const GroupStats& g) {
  return {{"key", g.key},
          {"count", g.weights.size()},
          {"mean", g.mean},
          {"q25", g.q25},
          {"q50", g.q50},
          {"q75", g.q75},
          {"abs_mean", g.abs_mean},
          {"abs_q25", g.abs_q25},
          {"abs_q50", g.abs_q50},
          {"abs_q75", g.abs_q75},
          {"weights", g.weights}};
}

inline nlohmann::json table_to_json(const std::vector<GroupStats>& table) {
  nlohmann::json arr = nlohmann::json::array();
  for (const GroupStats& g : table) arr.push_back(group_to_json(g));
  return arr;
}

}  // namespace detail

inline nlohmann::json summary_to_json(const GlobalSummary& summary) {
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassSummary& cs : summary.classes) {
    classes.push_back(
        {{"class", cs.class_id},
         {"tables",
          {{"feature", detail::table_to_json(cs.by_feature)},
           {"dilation", detail::table_to_json(cs.by_dilation)},
           {"length", detail::table_to_json(cs.by_length)},
           {"normalized", detail::table_to_json(cs.by_normalized)}}}});
  }
  return {{"classes", std::move(classes)}};
}

inline std::string summary_to_csv(const GlobalSummary& summary) {
  std::string out =
      "class,table,key,count,mean,q25,q50,q75,abs_mean,abs_q25,abs_q50,"
      "abs_q75\n";
  auto emit = [&out](int class_id, const char* table,
                     const std::vector<GroupStats>& groups) {
    for (const GroupStats& g : groups) {
      out += std::to_string(class_id);
      out += ',';
      out += table;
      out += ',';
      out += g.key;
      out += ',';
      out += std::to_string(g.weights.size());
      for (double v : {g.mean, g.q25, g.q50, g.q75, g.abs_mean, g.abs_q25,
                       g.abs_q50, g.abs_q75}) {
        out += ',';
        detail::append_double(out, v);
      }
      out += '\n';
    }
  };
  for (const ClassSummary& cs : summary.classes) {
    emit(cs.class_id, "feature", cs.by_feature);
    emit(cs.class_id, "dilation", cs.by_dilation);
    emit(cs.class_id, "length", cs.by_length);
    emit(cs.class_id, "normalized", cs.by_normalized);
  }
  return out;
}

inline nlohmann::json placement_to_json(std::size_t series_index,
                                        std::size_t shapelet_index,
                                        const Placement& p) {
  return {{"series", series_index},
          {"shapelet", shapelet_index},
          {"argmin", p.argmin},
          {"min_dist", p.min_dist},
          {"positions", p.positions},
          {"aligned_values", p.aligned_values},
          {"normalized", p.normalized},
          {"window_mean", p.window_mean},
          {"window_std", p.window_std}};
}

}  // namespace rdst
