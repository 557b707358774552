#pragma once

// Linear and logistic regression with fixed default hyperparameters, plus
// the two evaluation metrics used throughout (R2 and binary F1).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eai/dataset.hpp"

namespace eai {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hyperparameters. The defaults are the only values the toolkit uses in
/// campaigns; they are echoed into every report.
struct ModelDefaults {
  double inverse_regularization = 1.0;  // C; penalty is |w|^2 / (2C)
  double gradient_tolerance = 1e-8;     // max-norm of the objective gradient
  int max_iterations = 100;
  double threshold = 0.5;
};

/// Solver outcome flags carried alongside the parameters.
struct FitInfo {
  bool rank_deficient = false;  // regression: minimum-norm solution returned
  Eigen::Index rank = 0;
  bool converged = true;        // classification: gradient tolerance reached
  int iterations = 0;
  double gradient_max_norm = 0.0;
};

struct FittedModel {
  Task task = Task::Regression;
  Vector coefficients;
  double intercept = 0.0;
  std::vector<std::string> feature_names;
  Vector train_feature_means;
  FitInfo info;

  Eigen::Index n_features() const { return coefficients.size(); }

  /// Linear predictor (the logit for classification).
  Vector margin(const Matrix& features) const {
    if (features.cols() != coefficients.size())
      throw ModelError("predict: expected " + std::to_string(coefficients.size()) +
                       " columns, got " + std::to_string(features.cols()));
    return (features * coefficients).array() + intercept;
  }
};

namespace detail {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
inline double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

inline FittedModel fit_ols(const Dataset& d) {
  const Matrix& x = d.features();
  const Vector& y = d.target();
  const Vector means = x.colwise().mean();
  const double y_mean = y.mean();
  const Matrix xc = x.rowwise() - means.transpose();
  const Vector yc = y.array() - y_mean;

  // Centering absorbs the intercept, so the minimum-norm choice in the
  // rank-deficient case never touches it.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(xc);
  FittedModel m;
  m.task = Task::Regression;
  m.coefficients = cod.solve(yc);
  m.intercept = y_mean - means.dot(m.coefficients);
  m.feature_names = d.feature_names();
  m.train_feature_means = means;
  m.info.rank = cod.rank();
  m.info.rank_deficient = cod.rank() < x.cols();
  return m;
}

// Penalized negative log-likelihood on centered features; intercept unpenalized.
inline double logistic_objective(const Matrix& xc, const Vector& y, const Vector& w, double b,
                                 double c) {
  const Vector z = (xc * w).array() + b;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(z(i)) - y(i) * z(i);
  return loss + w.squaredNorm() / (2.0 * c);
}

inline FittedModel fit_logistic(const Dataset& d, const ModelDefaults& opts) {
  const Matrix& x = d.features();
  const Vector& y = d.target();
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  const Vector means = x.colwise().mean();
  const Matrix xc = x.rowwise() - means.transpose();
  const double c = opts.inverse_regularization;

  // Parameters: [w (p), b]; Newton on the centered design.
  Vector w = Vector::Zero(p);
  const double ybar = std::clamp(y.mean(), 1e-12, 1.0 - 1e-12);
  double b = std::log(ybar / (1.0 - ybar));

  Vector grad(p + 1);
  Matrix hess(p + 1, p + 1);
  Vector prob(n);
  auto evaluate = [&] {
    const Vector z = (xc * w).array() + b;
    for (Eigen::Index i = 0; i < n; ++i) prob(i) = sigmoid(z(i));
    const Vector resid = prob - y;
    grad.head(p) = xc.transpose() * resid + w / c;
    grad(p) = resid.sum();
  };

  FitInfo info;
  evaluate();
  double objective = logistic_objective(xc, y, w, b, c);
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    if (grad.lpNorm<Eigen::Infinity>() <= opts.gradient_tolerance) break;

    const Vector weight = prob.array() * (1.0 - prob.array());
    hess.topLeftCorner(p, p).noalias() = xc.transpose() * weight.asDiagonal() * xc;
    hess.topLeftCorner(p, p).diagonal().array() += 1.0 / c;
    hess.topRightCorner(p, 1) = xc.transpose() * weight;
    hess.bottomLeftCorner(1, p) = hess.topRightCorner(p, 1).transpose();
    hess(p, p) = std::max(weight.sum(), std::numeric_limits<double>::min());

    Eigen::LDLT<Matrix> ldlt(hess);
    Vector step = ldlt.solve(grad);
    if (ldlt.info() != Eigen::Success || !step.allFinite())
      step = hess.completeOrthogonalDecomposition().solve(grad);

    // Backtracking on the objective; accept the full step when it decreases.
    double t = 1.0;
    Vector w_new;
    double b_new = b;
    double obj_new = objective;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      w_new = w - t * step.head(p);
      b_new = b - t * step(p);
      obj_new = logistic_objective(xc, y, w_new, b_new, c);
      // The slack admits steps whose decrease is below the rounding error of
      // the objective, which is where Newton spends its final iterations.
      const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(objective);
      if (std::isfinite(obj_new) && obj_new <= objective - 1e-4 * t * grad.dot(step) + slack) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No descent possible at working precision; take the step only if it
      // does not increase the objective.
      if (obj_new <= objective) {
        w = w_new;
        b = b_new;
        evaluate();
      }
      break;
    }
    w = w_new;
    b = b_new;
    objective = obj_new;
    evaluate();
  }

  info.iterations = iter;
  info.gradient_max_norm = grad.lpNorm<Eigen::Infinity>();
  info.converged = info.gradient_max_norm <= opts.gradient_tolerance;
  info.rank = p;

  FittedModel m;
  m.task = Task::Classification;
  m.coefficients = w;
  m.intercept = b - means.dot(w);
  m.feature_names = d.feature_names();
  m.train_feature_means = means;
  m.info = info;
  return m;
}

}  // namespace detail

/// Fits OLS (regression) or L2-penalized logistic regression
/// (classification). Rank deficiency and non-convergence are reported in
/// `FittedModel::info` rather than thrown.
inline FittedModel fit(const Dataset& d, const ModelDefaults& opts = {}) {
  FittedModel m = d.task() == Task::Regression ? detail::fit_ols(d) : detail::fit_logistic(d, opts);
  if (!m.coefficients.allFinite() || !std::isfinite(m.intercept))
    throw ModelError("fit produced non-finite parameters");
  return m;
}

/// Regression: linear predictor. Classification: probability of class 1.
inline Vector predict(const FittedModel& m, const Matrix& features) {
  Vector out = m.margin(features);
  if (m.task == Task::Classification)
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = detail::sigmoid(out(i));
  return out;
}

inline double score_r2(const Vector& y_true, const Vector& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.size() == 0)
    throw ModelError("score_r2: lengths must be equal and nonzero");
  const double mean = y_true.mean();
  const double ss_tot = (y_true.array() - mean).square().sum();
  if (ss_tot == 0.0) throw ModelError("score_r2: target has zero variance");
  const double ss_res = (y_true - y_pred).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

/// Binary F1 for the positive class 1 with predictions prob >= threshold.
/// Returns 0 when there are no true or predicted positives.
inline double score_f1(const Vector& y_true, const Vector& prob, double threshold = 0.5) {
  if (y_true.size() != prob.size()) throw ModelError("score_f1: length mismatch");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ModelError("score_f1: threshold must be in (0,1)");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (Eigen::Index i = 0; i < y_true.size(); ++i) {
    const bool predicted = prob(i) >= threshold;
    const bool actual = y_true(i) == 1.0;
    tp += predicted && actual;
    fp += predicted && !actual;
    fn += !predicted && actual;
  }
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

/// The task's metric: F1 at the default threshold or R2.
inline double score(const FittedModel& m, const Dataset& d, const ModelDefaults& opts = {}) {
  const Vector pred = predict(m, d.features());
  return m.task == Task::Classification ? score_f1(d.target(), pred, opts.threshold)
                                        : score_r2(d.target(), pred);
}

/// Plain-text key/value dump: one "name = coefficient" line per feature,
/// then the intercept.
inline std::string to_text(const FittedModel& m) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "task = " << to_string(m.task) << '\n';
  for (Eigen::Index j = 0; j < m.coefficients.size(); ++j)
    out << m.feature_names[static_cast<std::size_t>(j)] << " = " << m.coefficients(j) << '\n';
  out << "intercept = " << m.intercept << '\n';
  return out.str();
}

}  // namespace eai
