#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rdst/errors.hpp"
#include "rdst/fileio.hpp"
#include "rdst/types.hpp"

namespace rdst {

inline constexpr int kArchiveVersion = 1;
inline constexpr const char* kArchiveFormat = "rdst-model";

struct ModelArchive {
  ShapeletBank bank;
  RidgeModel model;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw DataError(std::string("model archive: missing field '") + key + "'");
  }
  return *it;
}

inline nlohmann::json bank_to_json(const ShapeletBank& bank) {
  nlohmann::json j;
  j["seed"] = bank.seed;
  j["train_length"] = bank.train_length;
  j["config"] = {{"n_shapelets", bank.config.n_shapelets},
                 {"lengths", bank.config.lengths},
                 {"p_norm", bank.config.p_norm},
                 {"p1", bank.config.p1},
                 {"p2", bank.config.p2}};
  nlohmann::json shapelets = nlohmann::json::array();
  for (const DilatedShapelet& s : bank.shapelets) {
    shapelets.push_back({{"values", s.values},
                         {"dilation", s.dilation},
                         {"lambda", s.lambda},
                         {"normalized", s.normalized}});
  }
  j["shapelets"] = std::move(shapelets);
  nlohmann::json prov = nlohmann::json::array();
  for (const ShapeletProvenance& p : bank.provenance) {
    prov.push_back({{"source_series", p.source_series},
                    {"start_index", p.start_index},
                    {"lambda_series", p.lambda_series},
                    {"source_class", p.source_class}});
  }
  j["provenance"] = std::move(prov);
  return j;
}

inline nlohmann::json model_to_json(const RidgeModel& model) {
  return {{"alpha", model.alpha},
          {"class_table", model.class_table},
          {"intercepts", model.intercepts},
          {"feature_means", model.feature_means},
          {"feature_stds", model.feature_stds},
          {"cv_errors", model.cv_errors},
          {"weights", model.weights}};
}

inline ShapeletBank bank_from_json(const nlohmann::json& j) {
  ShapeletBank bank;
  bank.seed = require_field(j, "seed").get<std::uint64_t>();
  bank.train_length = require_field(j, "train_length").get<std::size_t>();
  const nlohmann::json& cfg = require_field(j, "config");
  bank.config.n_shapelets =
      require_field(cfg, "n_shapelets").get<std::size_t>();
  bank.config.lengths =
      require_field(cfg, "lengths").get<std::vector<std::size_t>>();
  bank.config.p_norm = require_field(cfg, "p_norm").get<double>();
  bank.config.p1 = require_field(cfg, "p1").get<double>();
  bank.config.p2 = require_field(cfg, "p2").get<double>();
  for (const nlohmann::json& js : require_field(j, "shapelets")) {
    DilatedShapelet s;
    s.values = require_field(js, "values").get<std::vector<double>>();
    s.dilation = require_field(js, "dilation").get<std::size_t>();
    s.lambda = require_field(js, "lambda").get<double>();
    s.normalized = require_field(js, "normalized").get<bool>();
    bank.shapelets.push_back(std::move(s));
  }
  for (const nlohmann::json& jp : require_field(j, "provenance")) {
    ShapeletProvenance p;
    p.source_series = require_field(jp, "source_series").get<std::size_t>();
    p.start_index = require_field(jp, "start_index").get<std::size_t>();
    p.lambda_series = require_field(jp, "lambda_series").get<std::size_t>();
    p.source_class = require_field(jp, "source_class").get<int>();
    bank.provenance.push_back(p);
  }
  return bank;
}

inline RidgeModel model_from_json(const nlohmann::json& j) {
  RidgeModel model;
  model.alpha = require_field(j, "alpha").get<double>();
  model.class_table = require_field(j, "class_table").get<std::vector<int>>();
  model.intercepts =
      require_field(j, "intercepts").get<std::vector<double>>();
  model.feature_means =
      require_field(j, "feature_means").get<std::vector<double>>();
  model.feature_stds =
      require_field(j, "feature_stds").get<std::vector<double>>();
  model.cv_errors = require_field(j, "cv_errors").get<std::vector<double>>();
  model.weights =
      require_field(j, "weights").get<std::vector<std::vector<double>>>();
  return model;
}

inline void check_archive(const ModelArchive& ar) {
  const ShapeletBank& bank = ar.bank;
  const RidgeModel& model = ar.model;
  if (bank.train_length < 2) {
    throw DataError("model archive: train_length must be at least 2");
  }
  if (bank.shapelets.empty()) {
    throw DataError("model archive: shapelet bank is empty");
  }
  if (bank.provenance.size() != bank.shapelets.size()) {
    throw DataError("model archive: provenance count " +
                    std::to_string(bank.provenance.size()) +
                    " does not match shapelet count " +
                    std::to_string(bank.shapelets.size()));
  }
  for (std::size_t k = 0; k < bank.shapelets.size(); ++k) {
    const DilatedShapelet& s = bank.shapelets[k];
    try {
      validate_shapelet(s);
    } catch (const DataError& e) {
      throw DataError("model archive: shapelet " + std::to_string(k) + ": " +
                      e.what());
    }
    if (s.reach() >= bank.train_length) {
      throw DataError("model archive: shapelet " + std::to_string(k) +
                      " does not fit the train length");
    }
  }
  const std::size_t n_features = 3 * bank.shapelets.size();
  if (model.class_table.size() < 2) {
    throw DataError("model archive: class table needs at least 2 classes");
  }
  if (model.weights.size() != model.class_table.size() ||
      model.intercepts.size() != model.class_table.size()) {
    throw DataError("model archive: per-class arrays disagree with the "
                    "class table");
  }
  for (const std::vector<double>& w : model.weights) {
    if (w.size() != n_features) {
      throw DataError("model archive: weight vector size " +
                      std::to_string(w.size()) + " does not match " +
                      std::to_string(n_features) + " features");
    }
  }
  if (model.feature_means.size() != n_features ||
      model.feature_stds.size() != n_features) {
    throw DataError("model archive: standardization stats do not match the "
                    "feature count");
  }
  if (!(model.alpha > 0.0) || !std::isfinite(model.alpha)) {
    throw DataError("model archive: alpha must be positive and finite");
  }
}

}  // namespace detail

inline std::string serialize_archive(const ModelArchive& ar) {
  nlohmann::json j = detail::bank_to_json(ar.bank);
  j["format"] = kArchiveFormat;
  j["format_version"] = kArchiveVersion;
  j["model"] = detail::model_to_json(ar.model);
  return j.dump();
}

inline ModelArchive parse_archive(const std::string& text,
                                  const std::string& origin = "<memory>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(origin + ": not valid JSON: " + e.what());
  }
  try {
    const std::string format =
        detail::require_field(j, "format").get<std::string>();
    if (format != kArchiveFormat) {
      throw DataError(origin + ": unexpected format '" + format + "'");
    }
    const int version = detail::require_field(j, "format_version").get<int>();
    if (version != kArchiveVersion) {
      throw DataError(origin + ": unsupported format version " +
                      std::to_string(version) + ", expected " +
                      std::to_string(kArchiveVersion));
    }
    ModelArchive ar;
    ar.bank = detail::bank_from_json(j);
    ar.model = detail::model_from_json(detail::require_field(j, "model"));
    detail::check_archive(ar);
    return ar;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(origin + ": malformed model archive: " + e.what());
  }
}

inline void save_archive(const std::string& path, const ModelArchive& ar) {
  write_file(path, serialize_archive(ar));
}

inline ModelArchive load_archive(const std::string& path) {
  return parse_archive(read_file(path), path);
}

}  // namespace rdst
