#pragma once

// Per-feature importance scores: exact Shapley values for linear models and
// model-agnostic permutation importance.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eai/dataset.hpp"
#include "eai/models.hpp"

namespace eai {

enum class AttributionMethod { LinearShap, PermutationImportance };

inline std::string to_string(AttributionMethod m) {
  return m == AttributionMethod::LinearShap ? "shap" : "perm";
}

struct AttributionResult {
  AttributionMethod method = AttributionMethod::LinearShap;
  std::optional<Matrix> per_sample;  // LinearShap only; margin scale for logistic
  Vector global_scores;              // >= 0, aligned with feature_names
  std::vector<std::string> feature_names;
};

/// Interventional SHAP for a linear predictor with independent features:
/// phi[i][j] = beta_j * (x[i][j] - mean_j). Global score is mean |phi|.
inline AttributionResult linear_shap(const FittedModel& m, const Dataset& d) {
  if (d.cols() != m.n_features())
    throw ModelError("linear_shap: dataset has " + std::to_string(d.cols()) +
                     " columns, model expects " + std::to_string(m.n_features()));
  Matrix phi = (d.features().rowwise() - m.train_feature_means.transpose()) *
               m.coefficients.asDiagonal();
  AttributionResult r;
  r.method = AttributionMethod::LinearShap;
  r.global_scores = phi.cwiseAbs().colwise().mean().transpose();
  r.per_sample = std::move(phi);
  r.feature_names = m.feature_names;
  return r;
}

namespace detail {

// splitmix64 finalizer; mixes (seed, feature, repeat) into independent streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto step = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return step(step(step(seed) ^ a) ^ b);
}

}  // namespace detail

/// Seeded random permutation of `v`.
inline Vector shuffled(const Vector& v, std::uint64_t seed) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(order[static_cast<std::size_t>(i)]);
  return out;
}

/// Mean metric drop when one column is shuffled, clamped at zero. Each
/// (feature, repeat) pair draws from its own seed, so results do not depend
/// on evaluation order.
inline AttributionResult permutation_importance(const FittedModel& m, const Dataset& d,
                                                std::size_t repeats = 5, std::uint64_t seed = 42,
                                                const ModelDefaults& opts = {}) {
  if (d.cols() != m.n_features())
    throw ModelError("permutation_importance: dataset has " + std::to_string(d.cols()) +
                     " columns, model expects " + std::to_string(m.n_features()));
  if (repeats == 0) throw ModelError("permutation_importance: repeats must be >= 1");

  auto metric = [&](const Matrix& x) {
    const Vector pred = predict(m, x);
    return m.task == Task::Classification ? score_f1(d.target(), pred, opts.threshold)
                                          : score_r2(d.target(), pred);
  };
  const double baseline = metric(d.features());

  AttributionResult r;
  r.method = AttributionMethod::PermutationImportance;
  r.global_scores = Vector::Zero(d.cols());
  r.feature_names = m.feature_names;
  Matrix x = d.features();
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    if (m.coefficients(j) == 0.0) continue;  // predictions cannot change
    const Vector original = x.col(j);
    double total = 0.0;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      x.col(j) = shuffled(original, detail::mix_seed(seed, static_cast<std::uint64_t>(j), rep));
      total += baseline - metric(x);
    }
    x.col(j) = original;
    r.global_scores(j) = std::max(0.0, total / static_cast<double>(repeats));
  }
  return r;
}

/// Feature with the largest global score; ties go to the lowest column.
inline std::pair<std::string, double> most_significant(const AttributionResult& a) {
  if (a.global_scores.size() == 0 || a.feature_names.empty())
    throw ModelError("most_significant: empty attribution result");
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < a.global_scores.size(); ++j)
    if (a.global_scores(j) > a.global_scores(best)) best = j;
  return {a.feature_names[static_cast<std::size_t>(best)], a.global_scores(best)};
}

/// "feature,score" rows sorted by score descending (stable on ties).
inline std::string to_csv(const AttributionResult& a) {
  std::vector<std::size_t> order(a.feature_names.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a.global_scores(static_cast<Eigen::Index>(l)) >
           a.global_scores(static_cast<Eigen::Index>(r));
  });
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "feature,score\n";
  for (auto j : order) out << a.feature_names[j] << ',' << a.global_scores(static_cast<Eigen::Index>(j)) << '\n';
  return out.str();
}

}  // namespace eai
