// Command-line toolkit: fit / predict / transform / evaluate / explain /
// synth / sweep / scalability over the library. Exit codes: 0 success,
// 2 configuration error, 3 data error.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rdst/rdst.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(delim, pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s,
                                         const char* what) {
  std::vector<std::size_t> out;
  for (const std::string& tok : split_list(s, ',')) {
    std::size_t v = 0;
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), last, v);
    if (ec != std::errc() || ptr != last || tok.empty()) {
      throw rdst::ConfigError(std::string(what) + ": cannot parse '" + tok +
                              "' as a positive integer");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const std::string& tok : split_list(s, ',')) {
    double v = 0.0;
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), last, v);
    if (ec != std::errc() || ptr != last || tok.empty()) {
      throw rdst::ConfigError(std::string(what) + ": cannot parse '" + tok +
                              "' as a number");
    }
    out.push_back(v);
  }
  return out;
}

void write_text_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  rdst::write_file(path, content);
}

// flags shared by every command that generates a bank
struct ConfigFlags {
  std::size_t n_shapelets = 10000;
  std::string lengths = "11";
  double p_norm = 0.8;
  double p1 = 5.0;
  double p2 = 10.0;

  rdst::GenerationConfig build() const {
    rdst::GenerationConfig cfg;
    cfg.n_shapelets = n_shapelets;
    cfg.lengths = parse_size_list(lengths, "--lengths");
    cfg.p_norm = p_norm;
    cfg.p1 = p1;
    cfg.p2 = p2;
    return cfg;
  }
};

void add_config_flags(CLI::App* cmd, const std::shared_ptr<ConfigFlags>& f) {
  cmd->add_option("--n-shapelets", f->n_shapelets,
                  "number of shapelets to generate")
      ->capture_default_str();
  cmd->add_option("--lengths", f->lengths,
                  "candidate shapelet lengths, comma-separated")
      ->capture_default_str();
  cmd->add_option("--p-norm", f->p_norm,
                  "probability a shapelet uses z-normalized distance")
      ->capture_default_str();
  cmd->add_option("--p1", f->p1, "lower percentile for lambda sampling")
      ->capture_default_str();
  cmd->add_option("--p2", f->p2, "upper percentile for lambda sampling")
      ->capture_default_str();
}

rdst::AlphaGrid build_alpha_grid(const std::string& flag) {
  if (flag.empty()) return rdst::AlphaGrid::logspace();
  rdst::AlphaGrid grid{parse_double_list(flag, "--alpha-grid")};
  rdst::validate_grid(grid);
  return grid;
}

struct FitArgs {
  std::string train_path;
  std::string out_path;
  std::string alpha_grid;
  std::string features_csv;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::shared_ptr<ConfigFlags> config = std::make_shared<ConfigFlags>();
};

void run_fit(const FitArgs& a) {
  const rdst::LabeledDataset train = rdst::load_tsv(a.train_path);
  const rdst::GenerationConfig cfg = a.config->build();
  const rdst::AlphaGrid grid = build_alpha_grid(a.alpha_grid);

  rdst::ModelArchive ar;
  ar.bank = rdst::generate_bank(train, cfg, a.seed, a.threads);
  const rdst::FeatureMatrix features =
      rdst::transform(ar.bank, train.series, a.threads);
  ar.model = rdst::fit_ridge(features, train.labels, grid);
  rdst::save_archive(a.out_path, ar);
  if (!a.features_csv.empty()) {
    std::string csv;
    {
      std::ostringstream ss;
      rdst::write_features_csv(features, ss);
      csv = ss.str();
    }
    rdst::write_file(a.features_csv, csv);
  }
  std::cerr << "wrote " << a.out_path << " (" << ar.bank.shapelets.size()
            << " shapelets, alpha " << ar.model.alpha << ")\n";
}

struct PredictArgs {
  std::string model_path;
  std::string data_path;
  std::string out_path;
  std::string scores_path;
};

void run_predict(const PredictArgs& a) {
  const rdst::ModelArchive ar = rdst::load_archive(a.model_path);
  const rdst::LabeledDataset data = rdst::load_tsv(a.data_path);
  const rdst::FeatureMatrix features =
      rdst::transform(ar.bank, data.series);
  const std::vector<int> labels = rdst::predict(ar.model, features);

  std::string out;
  for (int label : labels) {
    out += std::to_string(label);
    out += '\n';
  }
  write_text_out(a.out_path, out);

  if (!a.scores_path.empty()) {
    const auto scores = rdst::decision_values(ar.model, features);
    std::string csv;
    for (std::size_t c = 0; c < ar.model.class_table.size(); ++c) {
      if (c > 0) csv += ',';
      csv += "score_" + std::to_string(ar.model.class_table[c]);
    }
    csv += '\n';
    for (const std::vector<double>& row : scores) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) csv += ',';
        rdst::detail::append_double(csv, row[c]);
      }
      csv += '\n';
    }
    rdst::write_file(a.scores_path, csv);
  }
}

struct TransformArgs {
  std::string model_path;
  std::string data_path;
  std::string out_path;
  unsigned threads = 0;
};

void run_transform(const TransformArgs& a) {
  const rdst::ModelArchive ar = rdst::load_archive(a.model_path);
  const rdst::LabeledDataset data = rdst::load_tsv(a.data_path);
  const rdst::FeatureMatrix features =
      rdst::transform(ar.bank, data.series, a.threads);
  std::ostringstream ss;
  rdst::write_features_csv(features, ss);
  write_text_out(a.out_path, ss.str());
}

struct EvaluateArgs {
  std::string train_path;
  std::string test_path;
  std::string out_path;
  std::string alpha_grid;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t n_resamples = 1;
  double train_fraction = 0.5;
  std::shared_ptr<ConfigFlags> config = std::make_shared<ConfigFlags>();
};

void run_evaluate(const EvaluateArgs& a) {
  rdst::EvaluateOptions opt;
  opt.config = a.config->build();
  opt.grid = build_alpha_grid(a.alpha_grid);
  opt.seed = a.seed;
  opt.threads = a.threads;
  opt.n_resamples = a.n_resamples;
  opt.train_fraction = a.train_fraction;
  const nlohmann::json report = rdst::evaluate(
      rdst::load_tsv(a.train_path), rdst::load_tsv(a.test_path), opt);
  write_text_out(a.out_path, report.dump(2) + "\n");
}

struct ExplainArgs {
  std::string model_path;
  std::string data_path;
  std::string out_prefix;
  int class_id = 0;
  std::size_t top_k = 1;
};

void run_explain(const ExplainArgs& a) {
  const rdst::ModelArchive ar = rdst::load_archive(a.model_path);
  const rdst::LabeledDataset data = rdst::load_tsv(a.data_path);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.series[i].size() != ar.bank.train_length) {
      throw rdst::LengthMismatch(
          "series " + std::to_string(i) + " has length " +
          std::to_string(data.series[i].size()) + ", model expects " +
          std::to_string(ar.bank.train_length));
    }
  }
  if (a.top_k == 0) throw rdst::ConfigError("--top-k must be at least 1");

  const auto ranked = rdst::rank_shapelets(ar.model, ar.bank, a.class_id);
  rdst::write_file(a.out_prefix + "_ranking.json",
                   rdst::ranking_to_json(ar.model, ar.bank, a.class_id)
                           .dump(2) +
                       "\n");
  rdst::write_file(a.out_prefix + "_ranking.csv",
                   rdst::ranking_to_csv(ar.model, ar.bank, a.class_id));

  const rdst::GlobalSummary summary = rdst::global_summary(ar.model, ar.bank);
  rdst::write_file(a.out_prefix + "_summary.json",
                   rdst::summary_to_json(summary).dump(2) + "\n");
  rdst::write_file(a.out_prefix + "_summary.csv",
                   rdst::summary_to_csv(summary));

  // top-k distinct shapelets in ranking order
  std::vector<std::size_t> top;
  for (const rdst::RankedFeature& r : ranked) {
    if (std::find(top.begin(), top.end(), r.shapelet) == top.end()) {
      top.push_back(r.shapelet);
      if (top.size() == a.top_k) break;
    }
  }
  nlohmann::json entries = nlohmann::json::array();
  std::string csv =
      "series,shapelet,argmin,min_dist,normalized,window_mean,window_std,"
      "positions,aligned_values\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t k : top) {
      const rdst::Placement p =
          rdst::locate_on_series(ar.bank.shapelets[k], data.series[i]);
      entries.push_back(rdst::placement_to_json(i, k, p));
      csv += std::to_string(i);
      csv += ',';
      csv += std::to_string(k);
      csv += ',';
      csv += std::to_string(p.argmin);
      csv += ',';
      rdst::detail::append_double(csv, p.min_dist);
      csv += ',';
      csv += p.normalized ? "true" : "false";
      csv += ',';
      rdst::detail::append_double(csv, p.window_mean);
      csv += ',';
      rdst::detail::append_double(csv, p.window_std);
      csv += ',';
      for (std::size_t j = 0; j < p.positions.size(); ++j) {
        if (j > 0) csv += ';';
        csv += std::to_string(p.positions[j]);
      }
      csv += ',';
      for (std::size_t j = 0; j < p.aligned_values.size(); ++j) {
        if (j > 0) csv += ';';
        rdst::detail::append_double(csv, p.aligned_values[j]);
      }
      csv += '\n';
    }
  }
  const nlohmann::json placements = {{"class", a.class_id},
                                     {"top_k", a.top_k},
                                     {"shapelets", top},
                                     {"entries", std::move(entries)}};
  rdst::write_file(a.out_prefix + "_placements.json",
                   placements.dump(2) + "\n");
  rdst::write_file(a.out_prefix + "_placements.csv", csv);
}

struct SynthArgs {
  std::string out_path;
  rdst::SyntheticSpec spec;
};

void run_synth(const SynthArgs& a) {
  rdst::save_tsv(a.out_path, rdst::make_synthetic(a.spec));
}

struct SweepArgs {
  std::vector<std::string> dataset_paths;
  std::string grid_n_shapelets;
  std::vector<std::string> grid_lengths;
  std::string grid_p_norm;
  std::string grid_percentiles;
  std::string out_records;
  std::string out_ranks;
  std::string alpha_grid;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t n_resamples = 1;
  double train_fraction = 0.5;
  std::shared_ptr<ConfigFlags> config = std::make_shared<ConfigFlags>();
};

void run_sweep(const SweepArgs& a) {
  rdst::SweepGrid grid;
  if (!a.grid_n_shapelets.empty()) {
    grid.n_shapelets =
        parse_size_list(a.grid_n_shapelets, "--grid-n-shapelets");
  }
  for (const std::string& lens : a.grid_lengths) {
    grid.lengths.push_back(parse_size_list(lens, "--grid-lengths"));
  }
  if (!a.grid_p_norm.empty()) {
    grid.p_norm = parse_double_list(a.grid_p_norm, "--grid-p-norm");
  }
  if (!a.grid_percentiles.empty()) {
    for (const std::string& pair : split_list(a.grid_percentiles, ',')) {
      const std::vector<std::string> parts = split_list(pair, ':');
      if (parts.size() != 2) {
        throw rdst::ConfigError("--grid-percentiles: expected p1:p2, got '" +
                                pair + "'");
      }
      grid.percentiles.emplace_back(
          parse_double_list(parts[0], "--grid-percentiles")[0],
          parse_double_list(parts[1], "--grid-percentiles")[0]);
    }
  }

  std::vector<std::pair<std::string, rdst::LabeledDataset>> datasets;
  for (const std::string& path : a.dataset_paths) {
    datasets.emplace_back(std::filesystem::path(path).stem().string(),
                          rdst::load_tsv(path));
  }

  rdst::SweepOptions opt;
  opt.base = a.config->build();
  opt.grid = build_alpha_grid(a.alpha_grid);
  opt.seed = a.seed;
  opt.threads = a.threads;
  opt.n_resamples = a.n_resamples;
  opt.train_fraction = a.train_fraction;

  const rdst::SweepResult result = rdst::sweep(grid, datasets, opt);
  write_text_out(a.out_records, rdst::sweep_records_csv(result));
  if (!a.out_ranks.empty()) {
    rdst::write_file(a.out_ranks, rdst::sweep_ranks_csv(result));
  }
}

struct ScalabilityArgs {
  std::string axis = "n_series";
  std::string points = "500,1000";
  std::string out_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t repeats = 3;
  rdst::SyntheticSpec spec;
  std::shared_ptr<ConfigFlags> config = std::make_shared<ConfigFlags>();
};

void run_scalability(const ScalabilityArgs& a) {
  rdst::ScaleAxis axis;
  if (a.axis == "n_series") {
    axis = rdst::ScaleAxis::n_series;
  } else if (a.axis == "series_length") {
    axis = rdst::ScaleAxis::series_length;
  } else {
    throw rdst::ConfigError(
        "--axis must be 'n_series' or 'series_length', got '" + a.axis + "'");
  }
  const auto curve = rdst::scalability(
      a.spec, axis, parse_size_list(a.points, "--points"),
      a.config->build(), a.seed, a.threads, a.repeats);
  write_text_out(a.out_path, rdst::scalability_csv(curve));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random dilated shapelet transform toolkit"};
  app.require_subcommand(1);

  auto fit = std::make_shared<FitArgs>();
  {
    CLI::App* cmd = app.add_subcommand("fit", "train a model on a TSV file");
    cmd->add_option("train", fit->train_path, "training TSV (or .tsv.gz)")
        ->required();
    cmd->add_option("-o,--out", fit->out_path,
                    "output model archive (.json or .json.gz)")
        ->required();
    add_config_flags(cmd, fit->config);
    cmd->add_option("--seed", fit->seed, "bank generation seed")
        ->capture_default_str();
    cmd->add_option("--threads", fit->threads, "worker threads, 0 = auto")
        ->capture_default_str();
    cmd->add_option("--alpha-grid", fit->alpha_grid,
                    "ridge alphas, comma-separated (default log grid "
                    "1e-3..1e3)");
    cmd->add_option("--features-csv", fit->features_csv,
                    "also write the training feature matrix as CSV");
    cmd->callback([fit] { run_fit(*fit); });
  }

  auto pred = std::make_shared<PredictArgs>();
  {
    CLI::App* cmd =
        app.add_subcommand("predict", "predict labels with a saved model");
    cmd->add_option("model", pred->model_path, "model archive")->required();
    cmd->add_option("data", pred->data_path, "input TSV")->required();
    cmd->add_option("-o,--out", pred->out_path,
                    "label output, one per line (default stdout)");
    cmd->add_option("--scores", pred->scores_path,
                    "also write per-class decision values as CSV");
    cmd->callback([pred] { run_predict(*pred); });
  }

  auto tr = std::make_shared<TransformArgs>();
  {
    CLI::App* cmd = app.add_subcommand(
        "transform", "emit the feature matrix for a dataset");
    cmd->add_option("model", tr->model_path, "model archive")->required();
    cmd->add_option("data", tr->data_path, "input TSV")->required();
    cmd->add_option("-o,--out", tr->out_path,
                    "feature CSV output (default stdout)");
    cmd->add_option("--threads", tr->threads, "worker threads, 0 = auto")
        ->capture_default_str();
    cmd->callback([tr] { run_transform(*tr); });
  }

  auto ev = std::make_shared<EvaluateArgs>();
  {
    CLI::App* cmd = app.add_subcommand(
        "evaluate", "fit and score train/test splits, report JSON metrics");
    cmd->add_option("train", ev->train_path, "training TSV")->required();
    cmd->add_option("test", ev->test_path, "test TSV")->required();
    cmd->add_option("-o,--out", ev->out_path,
                    "report path (default stdout)");
    add_config_flags(cmd, ev->config);
    cmd->add_option("--seed", ev->seed, "base seed")->capture_default_str();
    cmd->add_option("--threads", ev->threads, "worker threads, 0 = auto")
        ->capture_default_str();
    cmd->add_option("--alpha-grid", ev->alpha_grid,
                    "ridge alphas, comma-separated");
    cmd->add_option("--n-resamples", ev->n_resamples,
                    "total evaluation rounds; round 0 is the given split")
        ->capture_default_str();
    cmd->add_option("--train-fraction", ev->train_fraction,
                    "train share for resampled rounds")
        ->capture_default_str();
    cmd->callback([ev] { run_evaluate(*ev); });
  }

  auto ex = std::make_shared<ExplainArgs>();
  {
    CLI::App* cmd = app.add_subcommand(
        "explain", "emit ranking, summary and placement artifacts");
    cmd->add_option("model", ex->model_path, "model archive")->required();
    cmd->add_option("data", ex->data_path, "series to place shapelets on")
        ->required();
    cmd->add_option("--class-id", ex->class_id, "class to explain")
        ->required();
    cmd->add_option("--top-k", ex->top_k,
                    "number of top shapelets to place on the data")
        ->capture_default_str();
    cmd->add_option("--out-prefix", ex->out_prefix,
                    "prefix for _ranking/_summary/_placements files")
        ->required();
    cmd->callback([ex] { run_explain(*ex); });
  }

  auto sy = std::make_shared<SynthArgs>();
  {
    CLI::App* cmd = app.add_subcommand(
        "synth", "generate a two-class synthetic dataset");
    cmd->add_option("-o,--out", sy->out_path, "output TSV path")->required();
    cmd->add_option("--n-per-class", sy->spec.n_per_class,
                    "series per class")
        ->capture_default_str();
    cmd->add_option("--length", sy->spec.length, "series length")
        ->capture_default_str();
    cmd->add_option("--pattern-length", sy->spec.pattern_length,
                    "injected pattern length")
        ->capture_default_str();
    cmd->add_option("--pattern-dilation", sy->spec.pattern_dilation,
                    "injected pattern dilation")
        ->capture_default_str();
    cmd->add_option("--noise-std", sy->spec.noise_std,
                    "Gaussian noise level")
        ->capture_default_str();
    cmd->add_option("--seed", sy->spec.seed, "generator seed")
        ->capture_default_str();
    cmd->callback([sy] { run_synth(*sy); });
  }

  auto sw = std::make_shared<SweepArgs>();
  {
    CLI::App* cmd = app.add_subcommand(
        "sweep", "one-at-a-time sensitivity sweep over datasets");
    cmd->add_option("datasets", sw->dataset_paths, "dataset TSV paths")
        ->required();
    cmd->add_option("--grid-n-shapelets", sw->grid_n_shapelets,
                    "bank sizes to try, comma-separated");
    cmd->add_option("--grid-lengths", sw->grid_lengths,
                    "length set to try (repeatable, comma-separated)");
    cmd->add_option("--grid-p-norm", sw->grid_p_norm,
                    "normalization probabilities to try");
    cmd->add_option("--grid-percentiles", sw->grid_percentiles,
                    "percentile pairs to try, e.g. 0:10,5:10");
    add_config_flags(cmd, sw->config);
    cmd->add_option("--seed", sw->seed, "base seed")->capture_default_str();
    cmd->add_option("--threads", sw->threads, "worker threads, 0 = auto")
        ->capture_default_str();
    cmd->add_option("--alpha-grid", sw->alpha_grid,
                    "ridge alphas, comma-separated");
    cmd->add_option("--n-resamples", sw->n_resamples,
                    "resamples per (config, dataset)")
        ->capture_default_str();
    cmd->add_option("--train-fraction", sw->train_fraction,
                    "train share per resample")
        ->capture_default_str();
    cmd->add_option("--out-records", sw->out_records,
                    "per-run records CSV (default stdout)");
    cmd->add_option("--out-ranks", sw->out_ranks, "mean-rank summary CSV");
    cmd->callback([sw] { run_sweep(*sw); });
  }

  auto sc = std::make_shared<ScalabilityArgs>();
  {
    CLI::App* cmd = app.add_subcommand(
        "scalability", "time fit/transform along a size axis");
    cmd->add_option("--axis", sc->axis, "n_series or series_length")
        ->capture_default_str();
    cmd->add_option("--points", sc->points, "sizes to measure")
        ->capture_default_str();
    cmd->add_option("-o,--out", sc->out_path,
                    "timing CSV output (default stdout)");
    add_config_flags(cmd, sc->config);
    cmd->add_option("--length", sc->spec.length,
                    "series length of the synthetic template")
        ->capture_default_str();
    cmd->add_option("--n-per-class", sc->spec.n_per_class,
                    "series per class of the synthetic template")
        ->capture_default_str();
    cmd->add_option("--noise-std", sc->spec.noise_std, "noise level")
        ->capture_default_str();
    cmd->add_option("--seed", sc->seed, "generator seed")
        ->capture_default_str();
    cmd->add_option("--threads", sc->threads, "worker threads, 0 = auto")
        ->capture_default_str();
    cmd->add_option("--repeats", sc->repeats, "runs averaged per point")
        ->capture_default_str();
    cmd->callback([sc] { run_scalability(*sc); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rdst::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const rdst::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
