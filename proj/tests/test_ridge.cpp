#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "rdst/ridge.hpp"

using namespace rdst;

namespace {

FeatureMatrix random_matrix(std::uint64_t seed, std::size_t n,
                            std::size_t p) {
  FeatureMatrix X = FeatureMatrix::zeros(n, p);
  RngStream rng(seed, 0);
  for (double& v : X.data) v = rng.uniform(-3.0, 3.0);
  return X;
}

std::vector<std::vector<double>> rows_of(const FeatureMatrix& X) {
  std::vector<std::vector<double>> rows(X.rows, std::vector<double>(X.cols));
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) rows[i][j] = X.at(i, j);
  }
  return rows;
}

// two well-separated Gaussian blobs per class along the first feature
FeatureMatrix blob_features(std::uint64_t seed, std::size_t n_per_class,
                            std::size_t p, std::vector<int>* labels) {
  FeatureMatrix X = FeatureMatrix::zeros(2 * n_per_class, p);
  RngStream rng(seed, 0);
  labels->clear();
  for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
    const int label = i < n_per_class ? 0 : 1;
    labels->push_back(label);
    for (std::size_t j = 0; j < p; ++j) {
      X.at(i, j) = rng.gaussian() + (j == 0 ? (label == 0 ? -4.0 : 4.0) : 0.0);
    }
  }
  return X;
}

}  // namespace

TEST_CASE("alpha grid defaults to 10 log-spaced points in [1e-3, 1e3]") {
  const auto grid = AlphaGrid::logspace();
  REQUIRE(grid.values.size() == 10);
  REQUIRE(grid.values.front() == Catch::Approx(1e-3).epsilon(1e-12));
  REQUIRE(grid.values.back() == Catch::Approx(1e3).epsilon(1e-12));
  REQUIRE_NOTHROW(validate_grid(grid));
  for (std::size_t i = 1; i < grid.values.size(); ++i) {
    REQUIRE(grid.values[i] > grid.values[i - 1]);
    // log-spacing: constant ratio
    REQUIRE(grid.values[i] / grid.values[i - 1] ==
            Catch::Approx(std::pow(10.0, 6.0 / 9.0)).epsilon(1e-9));
  }

  REQUIRE_THROWS_AS(validate_grid(AlphaGrid{{}}), ConfigError);
  REQUIRE_THROWS_AS(validate_grid(AlphaGrid{{0.0, 1.0}}), ConfigError);
  REQUIRE_THROWS_AS(validate_grid(AlphaGrid{{2.0, 1.0}}), ConfigError);
}

TEST_CASE("standardization centers, scales and flags constants") {
  FeatureMatrix X = FeatureMatrix::zeros(4, 3);
  const double col0[] = {1.0, 2.0, 3.0, 4.0};
  for (std::size_t i = 0; i < 4; ++i) {
    X.at(i, 0) = col0[i];
    X.at(i, 1) = 7.0;  // constant
    X.at(i, 2) = -2.0 * col0[i];
  }
  const auto st = compute_standardization(X);
  REQUIRE(st.means[0] == 2.5);
  REQUIRE(st.stds[1] == 0.0);
  REQUIRE(st.stds[0] == Catch::Approx(std::sqrt(1.25)).epsilon(1e-12));

  const auto Xs = apply_standardization(X, st);
  for (std::size_t i = 0; i < 4; ++i) REQUIRE(Xs.at(i, 1) == 0.0);

  // idempotence: re-standardizing a standardized matrix is a no-op
  const auto st2 = compute_standardization(Xs);
  const auto Xss = apply_standardization(Xs, st2);
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      REQUIRE(std::abs(Xss.at(i, j) - Xs.at(i, j)) < 1e-12);
    }
  }
}

TEST_CASE("ridge_solve agrees with the naive normal-equations oracle") {
  SECTION("more rows than columns") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto X = random_matrix(seed, 30, 8);
      std::vector<double> y(30);
      RngStream rng(seed, 1);
      for (double& v : y) v = rng.uniform(-1.0, 1.0);

      const auto fast = ridge_solve(X, {y}, 0.5)[0];
      const auto slow = oracle::naive_ridge(rows_of(X), y, 0.5);
      for (std::size_t j = 0; j < 8; ++j) {
        REQUIRE(fast[j] == Catch::Approx(slow[j]).margin(1e-8));
      }
    }
  }
  SECTION("more columns than rows takes the dual route") {
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
      const auto X = random_matrix(seed, 8, 30);
      std::vector<double> y(8);
      RngStream rng(seed, 1);
      for (double& v : y) v = rng.uniform(-1.0, 1.0);

      const auto fast = ridge_solve(X, {y}, 2.0)[0];
      const auto slow = oracle::naive_ridge(rows_of(X), y, 2.0);
      for (std::size_t j = 0; j < 30; ++j) {
        REQUIRE(fast[j] == Catch::Approx(slow[j]).margin(1e-8));
      }
    }
  }
}

TEST_CASE("orthonormal columns give the closed-form shrinkage") {
  // X = I(8): XtX = I, so w = (1 + alpha)^-1 y
  FeatureMatrix X = FeatureMatrix::zeros(8, 8);
  std::vector<double> y(8);
  for (std::size_t i = 0; i < 8; ++i) {
    X.at(i, i) = 1.0;
    y[i] = static_cast<double>(i) - 3.5;
  }
  const auto w = ridge_solve(X, {y}, 1.0)[0];
  for (std::size_t j = 0; j < 8; ++j) {
    REQUIRE(w[j] == Catch::Approx(y[j] / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("weights vanish as regularization grows") {
  const auto X = random_matrix(99, 20, 6);
  std::vector<double> y(20);
  RngStream rng(99, 1);
  for (double& v : y) v = rng.uniform(-1.0, 1.0);

  auto norm = [](const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    return std::sqrt(s);
  };
  const double heavy = norm(ridge_solve(X, {y}, 1e6)[0]);
  const double light = norm(ridge_solve(X, {y}, 1.0)[0]);
  REQUIRE(heavy < light / 100.0);
}

TEST_CASE("fit separates two blobs and is deterministic") {
  std::vector<int> labels;
  const auto X = blob_features(7, 25, 4, &labels);
  const auto model = fit_ridge(X, labels);

  REQUIRE(model.n_classes() == 2);
  REQUIRE(model.class_table == std::vector<int>{0, 1});
  REQUIRE(model.cv_errors.size() == 10);
  const auto grid = AlphaGrid::logspace();
  REQUIRE(std::count(grid.values.begin(), grid.values.end(),
                     model.alpha) == 1);

  const auto pred = predict(model, X);
  REQUIRE(pred == labels);

  const auto again = fit_ridge(X, labels);
  REQUIRE(again.alpha == model.alpha);
  REQUIRE(again.weights == model.weights);
  REQUIRE(again.intercepts == model.intercepts);
}

TEST_CASE("residual optimality holds at the selected alpha") {
  std::vector<int> labels;
  const auto X = blob_features(8, 20, 5, &labels);
  const auto model = fit_ridge(X, labels);
  const auto Xs = apply_standardization(
      X, Standardization{model.feature_means, model.feature_stds});

  for (std::size_t c = 0; c < model.n_classes(); ++c) {
    std::vector<double> y(X.rows);
    double ysum = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      y[i] = labels[i] == model.class_table[c] ? 1.0 : -1.0;
      ysum += y[i];
    }
    const double ybar = ysum / static_cast<double>(X.rows);

    // r = Xs^T (Xs w - yc) + alpha w
    std::vector<double> resid(X.cols, 0.0);
    std::vector<double> fitted(X.rows, 0.0);
    for (std::size_t i = 0; i < X.rows; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < X.cols; ++j) {
        acc += Xs.at(i, j) * model.weights[c][j];
      }
      fitted[i] = acc - (y[i] - ybar);
    }
    for (std::size_t j = 0; j < X.cols; ++j) {
      double acc = model.alpha * model.weights[c][j];
      for (std::size_t i = 0; i < X.rows; ++i) {
        acc += Xs.at(i, j) * fitted[i];
      }
      resid[j] = acc;
    }
    for (double r : resid) REQUIRE(std::abs(r) < 1e-6);
  }
}

TEST_CASE("duplicating every feature column keeps predicted labels") {
  std::vector<int> labels;
  const auto X = blob_features(9, 30, 3, &labels);
  FeatureMatrix XX = FeatureMatrix::zeros(X.rows, 2 * X.cols);
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      XX.at(i, j) = X.at(i, j);
      XX.at(i, X.cols + j) = X.at(i, j);
    }
  }
  const auto base = predict(fit_ridge(X, labels), X);
  const auto doubled = predict(fit_ridge(XX, labels), XX);
  REQUIRE(base == doubled);
}

TEST_CASE("random labels score near chance") {
  const std::size_t n = 1000;
  const int C = 4;
  FeatureMatrix X = FeatureMatrix::zeros(n, 10);
  std::vector<int> labels(n);
  RngStream rng(123, 0);
  for (double& v : X.data) v = rng.uniform(-1.0, 1.0);
  for (auto& l : labels) l = static_cast<int>(rng.next_below(C));

  // fit on the first half, score the held-out half
  const std::size_t half = n / 2;
  FeatureMatrix Xtr = FeatureMatrix::zeros(half, 10);
  FeatureMatrix Xte = FeatureMatrix::zeros(n - half, 10);
  std::vector<int> ytr(labels.begin(), labels.begin() + half);
  std::vector<int> yte(labels.begin() + half, labels.end());
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = 0; j < 10; ++j) Xtr.at(i, j) = X.at(i, j);
  }
  for (std::size_t i = half; i < n; ++i) {
    for (std::size_t j = 0; j < 10; ++j) Xte.at(i - half, j) = X.at(i, j);
  }
  const auto pred = predict(fit_ridge(Xtr, ytr), Xte);
  double hits = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == yte[i]) hits += 1.0;
  }
  const double acc = hits / static_cast<double>(pred.size());
  REQUIRE(std::abs(acc - 0.25) < 0.1);
}

TEST_CASE("scaling a raw feature column does not change labels") {
  std::vector<int> labels;
  const auto X = blob_features(10, 20, 4, &labels);
  FeatureMatrix scaled = X;
  for (std::size_t i = 0; i < X.rows; ++i) scaled.at(i, 2) *= 1000.0;

  const auto base = predict(fit_ridge(X, labels), X);
  const auto moved = predict(fit_ridge(scaled, labels), scaled);
  REQUIRE(base == moved);
}

TEST_CASE("constant columns carry zero weight") {
  std::vector<int> labels;
  auto X = blob_features(11, 15, 3, &labels);
  for (std::size_t i = 0; i < X.rows; ++i) X.at(i, 1) = 42.0;

  const auto model = fit_ridge(X, labels);
  REQUIRE(model.feature_stds[1] == 0.0);
  for (std::size_t c = 0; c < model.n_classes(); ++c) {
    REQUIRE(model.weights[c][1] == 0.0);
  }
}

TEST_CASE("fit validations throw the documented errors") {
  std::vector<int> labels;
  const auto X = blob_features(12, 10, 3, &labels);

  SECTION("all-constant features") {
    FeatureMatrix flat = FeatureMatrix::zeros(X.rows, 2);
    for (double& v : flat.data) v = 3.0;
    REQUIRE_THROWS_AS(fit_ridge(flat, labels), DegenerateData);
  }
  SECTION("label count mismatch") {
    std::vector<int> short_labels(X.rows - 1, 0);
    REQUIRE_THROWS_AS(fit_ridge(X, short_labels), DimensionMismatch);
  }
  SECTION("single class") {
    std::vector<int> same(X.rows, 5);
    REQUIRE_THROWS_AS(fit_ridge(X, same), ValidationError);
  }
  SECTION("non-finite feature") {
    FeatureMatrix bad = X;
    bad.at(0, 0) = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(fit_ridge(bad, labels), ValidationError);
  }
  SECTION("predict dimension mismatch") {
    const auto model = fit_ridge(X, labels);
    const auto wrong = FeatureMatrix::zeros(2, X.cols + 1);
    REQUIRE_THROWS_AS(predict(model, wrong), DimensionMismatch);
  }
}

TEST_CASE("prediction ties resolve to the lowest class index") {
  RidgeModel model;
  model.class_table = {3, 9};
  model.weights = {{0.0, 0.0}, {0.0, 0.0}};
  model.intercepts = {1.5, 1.5};
  model.feature_means = {0.0, 0.0};
  model.feature_stds = {1.0, 1.0};

  const auto X = FeatureMatrix::zeros(2, 2);
  const auto pred = predict(model, X);
  REQUIRE(pred == std::vector<int>{3, 3});
}
