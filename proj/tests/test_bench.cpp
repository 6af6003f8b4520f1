#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rdst/bench.hpp"

using namespace rdst;

namespace {

GenerationConfig fast_config() {
  GenerationConfig cfg;
  cfg.n_shapelets = 20;
  cfg.lengths = {5};
  return cfg;
}

std::vector<std::pair<std::string, LabeledDataset>> two_datasets() {
  SyntheticSpec spec;
  spec.n_per_class = 8;
  spec.length = 48;
  spec.pattern_length = 7;
  spec.pattern_dilation = 2;
  spec.seed = 1;
  std::vector<std::pair<std::string, LabeledDataset>> out;
  out.emplace_back("alpha", make_synthetic(spec));
  spec.seed = 2;
  spec.noise_std = 0.4;
  out.emplace_back("beta", make_synthetic(spec));
  return out;
}

}  // namespace

TEST_CASE("expand_grid emits one config per value, in listing order") {
  GenerationConfig base;
  base.n_shapelets = 500;
  base.lengths = {9};
  base.p_norm = 0.6;

  SweepGrid grid;
  grid.n_shapelets = {100, 200};
  grid.lengths = {{7}, {7, 9, 11}};
  grid.p_norm = {0.2};
  grid.percentiles = {{5.0, 10.0}, {25.0, 50.0}};

  const auto configs = expand_grid(grid, base);
  REQUIRE(configs.size() == 7);
  CHECK(configs[0].first == "n_shapelets=100");
  CHECK(configs[1].first == "n_shapelets=200");
  CHECK(configs[2].first == "lengths=7");
  CHECK(configs[3].first == "lengths=7+9+11");
  CHECK(configs[4].first == "p_norm=0.2");
  CHECK(configs[5].first == "p=5+10");
  CHECK(configs[6].first == "p=25+50");

  // each config overrides exactly one field of the base
  CHECK(configs[0].second.n_shapelets == 100);
  CHECK(configs[0].second.lengths == std::vector<std::size_t>{9});
  CHECK(configs[0].second.p_norm == 0.6);
  CHECK(configs[3].second.lengths == std::vector<std::size_t>{7, 9, 11});
  CHECK(configs[3].second.n_shapelets == 500);
  CHECK(configs[4].second.p_norm == 0.2);
  CHECK(configs[6].second.p1 == 25.0);
  CHECK(configs[6].second.p2 == 50.0);
  CHECK(configs[6].second.p_norm == 0.6);
}

TEST_CASE("expand_grid with an empty grid yields the base as 'default'") {
  GenerationConfig base;
  base.n_shapelets = 321;
  const auto configs = expand_grid(SweepGrid{}, base);
  REQUIRE(configs.size() == 1);
  CHECK(configs[0].first == "default");
  CHECK(configs[0].second.n_shapelets == 321);
}

TEST_CASE("rank_descending assigns rank 1 to the best accuracy") {
  using rdst::detail::rank_descending;

  CHECK(rank_descending({0.9, 0.5, 0.7}) == std::vector<double>{1.0, 3.0, 2.0});

  SECTION("exact ties share the averaged position") {
    CHECK(rank_descending({0.8, 0.6, 0.8, 0.1}) ==
          std::vector<double>{1.5, 3.0, 1.5, 4.0});
    CHECK(rank_descending({0.5, 0.5, 0.5}) ==
          std::vector<double>{2.0, 2.0, 2.0});
  }

  SECTION("every row sums to k(k+1)/2") {
    RngStream rng(31, 0);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t k = 1 + rng.next_below(8);
      std::vector<double> acc(k);
      // draw from a coarse lattice so ties actually happen
      for (double& a : acc) {
        a = static_cast<double>(rng.next_below(4)) / 4.0;
      }
      const auto ranks = rank_descending(acc);
      double sum = 0.0;
      for (double r : ranks) sum += r;
      const double want = static_cast<double>(k * (k + 1)) / 2.0;
      CHECK_THAT(sum, Catch::Matchers::WithinAbs(want, 1e-9));
    }
  }
}

TEST_CASE("sweep evaluates every config on every dataset and resample") {
  const auto datasets = two_datasets();
  SweepGrid grid;
  grid.n_shapelets = {15, 25};

  SweepOptions opt;
  opt.base = fast_config();
  opt.seed = 7;
  opt.n_resamples = 2;

  const SweepResult result = sweep(grid, datasets, opt);
  REQUIRE(result.configs.size() == 2);
  REQUIRE(result.dataset_names == std::vector<std::string>{"alpha", "beta"});
  REQUIRE(result.records.size() == 2 * 2 * 2);

  // dataset-major, then config, then resample
  CHECK(result.records[0].config_id == "n_shapelets=15");
  CHECK(result.records[0].dataset == "alpha");
  CHECK(result.records[0].resample == 0);
  CHECK(result.records[1].resample == 1);
  CHECK(result.records[2].config_id == "n_shapelets=25");
  CHECK(result.records[4].dataset == "beta");

  REQUIRE(result.mean_accuracy.size() == 2);
  REQUIRE(result.rank_matrix.size() == 2);
  REQUIRE(result.mean_ranks.size() == 2);
  for (std::size_t d = 0; d < 2; ++d) {
    REQUIRE(result.mean_accuracy[d].size() == 2);
    CHECK(result.rank_matrix[d][0] + result.rank_matrix[d][1] == 3.0);
    for (double a : result.mean_accuracy[d]) {
      CHECK(a >= 0.0);
      CHECK(a <= 1.0);
    }
  }
  for (double r : result.mean_ranks) {
    CHECK(r >= 1.0);
    CHECK(r <= 2.0);
  }

  SECTION("mean accuracy aggregates the records") {
    double sum = 0.0;
    for (const SweepRecord& rec : result.records) {
      if (rec.config_id == "n_shapelets=15" && rec.dataset == "alpha") {
        sum += rec.accuracy;
      }
    }
    CHECK_THAT(result.mean_accuracy[0][0],
               Catch::Matchers::WithinAbs(sum / 2.0, 1e-12));
  }

  SECTION("sweep is deterministic") {
    const SweepResult again = sweep(grid, datasets, opt);
    REQUIRE(again.records.size() == result.records.size());
    for (std::size_t i = 0; i < result.records.size(); ++i) {
      CHECK(again.records[i].accuracy == result.records[i].accuracy);
    }
    CHECK(again.mean_ranks == result.mean_ranks);
  }

  SECTION("csv emission carries the fixed headers") {
    const std::string records_csv = sweep_records_csv(result);
    REQUIRE(records_csv.rfind("config_id,dataset,resample,accuracy,fit_s,"
                              "transform_s,predict_s\n",
                              0) == 0);
    CHECK(std::count(records_csv.begin(), records_csv.end(), '\n') == 9);
    CHECK(records_csv.find("n_shapelets=15,alpha,0,") != std::string::npos);

    const std::string ranks_csv = sweep_ranks_csv(result);
    REQUIRE(ranks_csv.rfind("config_id,mean_rank\n", 0) == 0);
    CHECK(std::count(ranks_csv.begin(), ranks_csv.end(), '\n') == 3);
  }
}

TEST_CASE("sweep with a single config ranks it 1 everywhere") {
  const auto datasets = two_datasets();
  SweepOptions opt;
  opt.base = fast_config();
  opt.seed = 3;

  const SweepResult result = sweep(SweepGrid{}, datasets, opt);
  REQUIRE(result.configs.size() == 1);
  CHECK(result.configs[0].first == "default");
  for (const auto& row : result.rank_matrix) {
    CHECK(row == std::vector<double>{1.0});
  }
  CHECK(result.mean_ranks == std::vector<double>{1.0});
}

TEST_CASE("sweep rejects empty inputs") {
  SweepOptions opt;
  opt.base = fast_config();
  CHECK_THROWS_AS(sweep(SweepGrid{}, {}, opt), ConfigError);

  const auto datasets = two_datasets();
  opt.n_resamples = 0;
  CHECK_THROWS_AS(sweep(SweepGrid{}, datasets, opt), ConfigError);
}

TEST_CASE("scalability walks the requested axis") {
  SyntheticSpec tmpl;
  tmpl.n_per_class = 6;
  tmpl.length = 48;
  tmpl.pattern_length = 7;
  tmpl.pattern_dilation = 2;

  GenerationConfig cfg;
  cfg.n_shapelets = 10;
  cfg.lengths = {5};

  SECTION("series count axis") {
    const auto curve =
        scalability(tmpl, ScaleAxis::n_series, {20, 40}, cfg, 5, 0, 1);
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].size == 20);
    CHECK(curve[1].size == 40);
    for (const ScalPoint& p : curve) {
      CHECK(p.fit_s >= 0.0);
      CHECK(p.transform_s >= 0.0);
    }
  }

  SECTION("series length axis") {
    const auto curve =
        scalability(tmpl, ScaleAxis::series_length, {32, 64}, cfg, 5, 0, 1);
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].size == 32);
    CHECK(curve[1].size == 64);
  }

  SECTION("csv output") {
    const auto curve =
        scalability(tmpl, ScaleAxis::n_series, {20}, cfg, 5, 0, 1);
    const std::string csv = scalability_csv(curve);
    REQUIRE(csv.rfind("size,fit_s,transform_s\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.find("\n20,") != std::string::npos);
  }

  SECTION("invalid requests are rejected up front") {
    CHECK_THROWS_AS(scalability(tmpl, ScaleAxis::n_series, {}, cfg, 5),
                    ConfigError);
    CHECK_THROWS_AS(scalability(tmpl, ScaleAxis::n_series, {0}, cfg, 5),
                    ConfigError);
    CHECK_THROWS_AS(scalability(tmpl, ScaleAxis::n_series, {20}, cfg, 5, 0, 0),
                    ConfigError);
  }
}
