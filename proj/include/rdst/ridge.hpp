#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "rdst/errors.hpp"
#include "rdst/types.hpp"

namespace rdst {

struct AlphaGrid {
  std::vector<double> values;

  // count log-spaced points in [lo, hi], the default search grid.
  static AlphaGrid logspace(double lo = 1e-3, double hi = 1e3,
                            std::size_t count = 10) {
    AlphaGrid grid;
    grid.values.resize(count);
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0
                                  : static_cast<double>(i) /
                                        static_cast<double>(count - 1);
      grid.values[i] = std::pow(10.0, llo + t * (lhi - llo));
    }
    return grid;
  }
};

inline void validate_grid(const AlphaGrid& grid) {
  if (grid.values.empty()) throw ConfigError("alpha grid must be non-empty");
  double prev = 0.0;
  for (double a : grid.values) {
    if (!(a > 0.0)) throw ConfigError("alpha grid values must be positive");
    if (!(a > prev)) {
      throw ConfigError("alpha grid must be strictly increasing");
    }
    prev = a;
  }
}

// Per-column mean and population std of the raw feature matrix.
// stds[j] == 0 flags a constant column; such a column standardizes to 0.
struct Standardization {
  std::vector<double> means;
  std::vector<double> stds;
};

inline Standardization compute_standardization(const FeatureMatrix& X) {
  Standardization st;
  st.means.assign(X.cols, 0.0);
  st.stds.assign(X.cols, 0.0);
  if (X.rows == 0) return st;
  const double n = static_cast<double>(X.rows);
  for (std::size_t r = 0; r < X.rows; ++r) {
    const double* row = X.data.data() + r * X.cols;
    for (std::size_t c = 0; c < X.cols; ++c) st.means[c] += row[c];
  }
  for (std::size_t c = 0; c < X.cols; ++c) st.means[c] /= n;
  for (std::size_t r = 0; r < X.rows; ++r) {
    const double* row = X.data.data() + r * X.cols;
    for (std::size_t c = 0; c < X.cols; ++c) {
      const double dev = row[c] - st.means[c];
      st.stds[c] += dev * dev;
    }
  }
  for (std::size_t c = 0; c < X.cols; ++c) {
    double sd = std::sqrt(st.stds[c] / n);
    if (sd <= 1e-12 * (1.0 + std::abs(st.means[c]))) sd = 0.0;
    st.stds[c] = sd;
  }
  return st;
}

inline FeatureMatrix apply_standardization(const FeatureMatrix& X,
                                           const Standardization& st) {
  if (st.means.size() != X.cols) {
    throw DimensionMismatch("standardization has " +
                            std::to_string(st.means.size()) +
                            " columns, matrix has " + std::to_string(X.cols));
  }
  FeatureMatrix out = FeatureMatrix::zeros(X.rows, X.cols);
  for (std::size_t r = 0; r < X.rows; ++r) {
    const double* src = X.data.data() + r * X.cols;
    double* dst = out.data.data() + r * X.cols;
    for (std::size_t c = 0; c < X.cols; ++c) {
      dst[c] = st.stds[c] == 0.0 ? 0.0 : (src[c] - st.means[c]) / st.stds[c];
    }
  }
  return out;
}

namespace detail {

// Solves (XtX + alpha I) W = Xt Y through the smaller Gram matrix: the
// primal normal equations when p <= n, the dual identity
// Xt (XXt + alpha I)^-1 Y otherwise. Both are SPD Cholesky solves.
inline Eigen::MatrixXd solve_gram(const Eigen::MatrixXd& X,
                                  const Eigen::MatrixXd& Y, double alpha) {
  if (X.cols() <= X.rows()) {
    Eigen::MatrixXd A = X.transpose() * X;
    A.diagonal().array() += alpha;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) {
      throw Error("ridge normal equations are not positive definite");
    }
    return llt.solve(X.transpose() * Y);
  }
  Eigen::MatrixXd A = X * X.transpose();
  A.diagonal().array() += alpha;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw Error("ridge dual system is not positive definite");
  }
  return X.transpose() * llt.solve(Y);
}

inline Eigen::MatrixXd to_eigen(const FeatureMatrix& X) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(
      X.data.data(), static_cast<Eigen::Index>(X.rows),
      static_cast<Eigen::Index>(X.cols));
}

}  // namespace detail

// Single-alpha ridge solve, (XtX + alpha I) W = Xt Y, one column of Y (and
// of the result) per target. Exposed for direct use and cross-checking.
inline std::vector<std::vector<double>> ridge_solve(
    const FeatureMatrix& X, const std::vector<std::vector<double>>& targets,
    double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  const auto n = static_cast<Eigen::Index>(X.rows);
  Eigen::MatrixXd Y(n, static_cast<Eigen::Index>(targets.size()));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (targets[t].size() != X.rows) {
      throw DimensionMismatch("target " + std::to_string(t) + " has " +
                              std::to_string(targets[t].size()) +
                              " entries, matrix has " + std::to_string(X.rows) +
                              " rows");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      Y(i, static_cast<Eigen::Index>(t)) = targets[t][i];
    }
  }
  const Eigen::MatrixXd W = detail::solve_gram(detail::to_eigen(X), Y, alpha);
  std::vector<std::vector<double>> out(targets.size(),
                                       std::vector<double>(X.cols));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      out[t][j] = W(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(t));
    }
  }
  return out;
}

// One-vs-rest ridge fit:
//   1. standardize each column (constant columns flagged, weight 0),
//   2. encode targets +1/-1 per class and center them,
//   3. score every grid alpha with closed-form leave-one-out error from one
//      eigendecomposition of the smaller Gram matrix,
//   4. keep the alpha with the smallest aggregate error (ties -> smallest),
//   5. solve the normal equations at that alpha via SPD Cholesky.
inline RidgeModel fit_ridge(const FeatureMatrix& features,
                            const std::vector<int>& labels,
                            const AlphaGrid& grid = AlphaGrid::logspace()) {
  validate_grid(grid);
  if (labels.size() != features.rows) {
    throw DimensionMismatch("feature matrix has " +
                            std::to_string(features.rows) + " rows but " +
                            std::to_string(labels.size()) + " labels");
  }
  if (features.rows < 2) {
    throw ValidationError("need at least 2 rows to fit, got " +
                          std::to_string(features.rows));
  }
  for (double v : features.data) {
    if (!std::isfinite(v)) {
      throw ValidationError("feature matrix contains a non-finite value");
    }
  }

  std::vector<int> class_table = labels;
  std::sort(class_table.begin(), class_table.end());
  class_table.erase(std::unique(class_table.begin(), class_table.end()),
                    class_table.end());
  if (class_table.size() < 2) {
    throw ValidationError("need at least 2 classes to fit");
  }

  const Standardization st = compute_standardization(features);
  if (std::all_of(st.stds.begin(), st.stds.end(),
                  [](double s) { return s == 0.0; })) {
    throw DegenerateData("every feature column is constant");
  }

  const auto n = static_cast<Eigen::Index>(features.rows);
  const auto p = static_cast<Eigen::Index>(features.cols);
  const auto C = static_cast<Eigen::Index>(class_table.size());

  const Eigen::MatrixXd Xs =
      detail::to_eigen(apply_standardization(features, st));

  Eigen::MatrixXd Y(n, C);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < C; ++c) {
      Y(i, c) = labels[static_cast<std::size_t>(i)] ==
                        class_table[static_cast<std::size_t>(c)]
                    ? 1.0
                    : -1.0;
    }
  }
  const Eigen::RowVectorXd ybar = Y.colwise().mean();
  const Eigen::MatrixXd Yc = Y.rowwise() - ybar;

  // Spectral basis shared by every grid point: hat(alpha) =
  // B diag(g(alpha)) Bt with B = Xs V (primal) or the eigenvectors of
  // Xs Xst (dual).
  const bool primal = p <= n;
  Eigen::VectorXd evals;
  Eigen::MatrixXd B;
  {
    Eigen::MatrixXd gram;
    if (primal) {
      gram = Xs.transpose() * Xs;
    } else {
      gram = Xs * Xs.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) {
      throw Error("eigendecomposition of the Gram matrix failed");
    }
    evals = es.eigenvalues().cwiseMax(0.0);
    B = primal ? Eigen::MatrixXd(Xs * es.eigenvectors())
               : Eigen::MatrixXd(es.eigenvectors());
  }
  const Eigen::MatrixXd BtY = B.transpose() * Yc;
  const Eigen::MatrixXd B2 = B.array().square();

  std::vector<double> cv_errors;
  cv_errors.reserve(grid.values.size());
  std::size_t best_index = 0;
  double best_error = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < grid.values.size(); ++a) {
    const double alpha = grid.values[a];
    Eigen::ArrayXd g;
    if (primal) {
      g = (evals.array() + alpha).inverse();
    } else {
      g = evals.array() / (evals.array() + alpha);
    }
    const Eigen::MatrixXd Yhat = B * (g.matrix().asDiagonal() * BtY);
    const Eigen::ArrayXd denom = 1.0 - (B2 * g.matrix()).array();
    const double err =
        ((Yc - Yhat).array().colwise() / denom).square().sum();
    cv_errors.push_back(err);
    if (err < best_error) {
      best_error = err;
      best_index = a;
    }
  }
  const double alpha = grid.values[best_index];

  Eigen::MatrixXd W = detail::solve_gram(Xs, Yc, alpha);  // p x C
  for (Eigen::Index j = 0; j < p; ++j) {
    if (st.stds[static_cast<std::size_t>(j)] == 0.0) W.row(j).setZero();
  }
  const Eigen::RowVectorXd xbar = Xs.colwise().mean();
  const Eigen::RowVectorXd intercepts = ybar - xbar * W;

  RidgeModel model;
  model.alpha = alpha;
  model.class_table = std::move(class_table);
  model.feature_means = st.means;
  model.feature_stds = st.stds;
  model.cv_errors = std::move(cv_errors);
  model.weights.assign(static_cast<std::size_t>(C),
                       std::vector<double>(static_cast<std::size_t>(p)));
  model.intercepts.resize(static_cast<std::size_t>(C));
  for (Eigen::Index c = 0; c < C; ++c) {
    model.intercepts[static_cast<std::size_t>(c)] = intercepts(c);
    for (Eigen::Index j = 0; j < p; ++j) {
      model.weights[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] =
          W(j, c);
    }
  }
  return model;
}

// Per-class decision values w_c . standardize(x) + b_c for every row.
inline std::vector<std::vector<double>> decision_values(
    const RidgeModel& model, const FeatureMatrix& X) {
  if (X.cols != model.n_features()) {
    throw DimensionMismatch("model expects " +
                            std::to_string(model.n_features()) +
                            " features, matrix has " + std::to_string(X.cols));
  }
  const std::size_t C = model.n_classes();
  std::vector<std::vector<double>> scores(X.rows, std::vector<double>(C));
  std::vector<double> xs(X.cols);
  for (std::size_t r = 0; r < X.rows; ++r) {
    const double* row = X.data.data() + r * X.cols;
    for (std::size_t j = 0; j < X.cols; ++j) {
      xs[j] = model.feature_stds[j] == 0.0
                  ? 0.0
                  : (row[j] - model.feature_means[j]) / model.feature_stds[j];
    }
    for (std::size_t c = 0; c < C; ++c) {
      double acc = model.intercepts[c];
      const std::vector<double>& w = model.weights[c];
      for (std::size_t j = 0; j < X.cols; ++j) acc += w[j] * xs[j];
      scores[r][c] = acc;
    }
  }
  return scores;
}

// Raw labels of the best-scoring class per row; ties pick the lowest class
// index.
inline std::vector<int> predict(const RidgeModel& model,
                                const FeatureMatrix& X) {
  const auto scores = decision_values(model, X);
  std::vector<int> labels(X.rows);
  for (std::size_t r = 0; r < X.rows; ++r) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores[r].size(); ++c) {
      if (scores[r][c] > scores[r][best]) best = c;
    }
    labels[r] = model.class_table[best];
  }
  return labels;
}

}  // namespace rdst
