#pragma once

// Iterative remove-and-retrain / permute-and-retrain campaigns. Each
// iteration fits, scores, attributes, computes the expected accuracy
// interval for the next model, then removes or permutes the top feature.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <iomanip>
#include <istream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eai/attribution.hpp"
#include "eai/dataset.hpp"
#include "eai/eai_metric.hpp"
#include "eai/models.hpp"

namespace eai {

enum class Mode { Roar, Permute };

inline std::string to_string(Mode m) { return m == Mode::Roar ? "roar" : "permute"; }

struct CampaignOptions {
  Mode mode = Mode::Roar;
  AttributionMethod method = AttributionMethod::LinearShap;
  std::uint64_t seed = 42;
  std::size_t repeats = 5;  // permutation-importance repeats
  ModelDefaults defaults{};
  // Fraction of rows held out for scoring. 0 trains and scores on all rows.
  double holdout_fraction = 0.0;
};

struct IterationRecord {
  int iteration = 0;  // 1-based
  std::string msf;
  double accuracy = 0.0;
  std::optional<EaiBand> band;                // absent on the last iteration
  std::optional<bool> within_previous_band;  // absent on the first iteration
  int remaining_features = 0;                // features in the model this iteration
  std::string diagnostic;
};

struct CampaignReport {
  Mode mode = Mode::Roar;
  AttributionMethod method = AttributionMethod::LinearShap;
  Task task = Task::Regression;
  std::string dataset_digest;
  std::uint64_t seed = 0;
  std::size_t repeats = 0;
  double holdout_fraction = 0.0;
  ModelDefaults model_defaults{};
  std::vector<IterationRecord> records;
  bool truncated = false;
};

/// FNV-1a 64 over feature names, task, shape and the raw values.
inline std::string dataset_digest(const Dataset& d) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& n : d.feature_names()) feed(n.data(), n.size() + 1);
  const int task = d.task() == Task::Classification ? 1 : 2;
  feed(&task, sizeof task);
  const std::int64_t shape[2] = {d.rows(), d.cols()};
  feed(shape, sizeof shape);
  feed(d.features().data(), static_cast<std::size_t>(d.features().size()) * sizeof(double));
  feed(d.target().data(), static_cast<std::size_t>(d.target().size()) * sizeof(double));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline std::string fixed4(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(4) << v;
  std::string s = out.str();
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// Seeded row split; returns (train, eval) index lists in ascending order.
inline std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> holdout_split(
    Eigen::Index rows, double fraction, std::uint64_t seed) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(rows));
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  if (fraction <= 0.0) return {all, all};
  std::mt19937_64 rng(mix_seed(seed, 0x686f6c64, 0));
  std::shuffle(all.begin(), all.end(), rng);
  const auto n_eval = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(rows)));
  if (n_eval < 2 || n_eval + 2 > all.size())
    throw DataError("holdout fraction leaves fewer than 2 rows on one side");
  std::vector<Eigen::Index> eval(all.begin(), all.begin() + static_cast<long>(n_eval));
  std::vector<Eigen::Index> train(all.begin() + static_cast<long>(n_eval), all.end());
  std::sort(eval.begin(), eval.end());
  std::sort(train.begin(), train.end());
  return {train, eval};
}

}  // namespace detail

/// Runs one campaign over `d`. Emits one record per initial feature; the
/// last record carries accuracy only. Fit failures and all-zero attribution
/// end the campaign early with a diagnostic on the final record.
inline CampaignReport run_campaign(const Dataset& d, const CampaignOptions& opts = {}) {
  if (d.cols() < 2) throw DataError("a campaign needs at least 2 features");
  if (!(opts.holdout_fraction >= 0.0 && opts.holdout_fraction < 1.0))
    throw DataError("holdout fraction must lie in [0, 1)");

  CampaignReport report;
  report.mode = opts.mode;
  report.method = opts.method;
  report.task = d.task();
  report.dataset_digest = dataset_digest(d);
  report.seed = opts.seed;
  report.repeats = opts.repeats;
  report.holdout_fraction = opts.holdout_fraction;
  report.model_defaults = opts.defaults;

  const auto [train_rows, eval_rows] =
      detail::holdout_split(d.rows(), opts.holdout_fraction, opts.seed);
  const bool split = opts.holdout_fraction > 0.0;

  const int n = static_cast<int>(d.cols());
  Dataset current = d;
  std::vector<bool> permuted(static_cast<std::size_t>(n), false);
  std::optional<EaiBand> previous;

  for (int k = 1; k <= n; ++k) {
    IterationRecord rec;
    rec.iteration = k;
    rec.remaining_features = static_cast<int>(current.cols());

    const Dataset train = split ? current.select_rows(train_rows) : current;
    const Dataset eval = split ? current.select_rows(eval_rows) : current;

    FittedModel model;
    try {
      model = fit(train, opts.defaults);
      rec.accuracy = score(model, eval, opts.defaults);
    } catch (const std::exception& e) {
      rec.diagnostic = std::string("model fit failed: ") + e.what();
      rec.accuracy = std::nan("");
      report.records.push_back(rec);
      report.truncated = true;
      break;
    }
    if (model.info.rank_deficient) rec.diagnostic = "rank-deficient design; minimum-norm solution";
    else if (model.task == Task::Classification && !model.info.converged)
      rec.diagnostic = "solver did not converge; best iterate used";
    if (previous) rec.within_previous_band = within_band(rec.accuracy, *previous);

    if (k == n) {
      report.records.push_back(rec);
      break;
    }

    const AttributionResult attr =
        opts.method == AttributionMethod::LinearShap
            ? linear_shap(model, train)
            : permutation_importance(model, eval, opts.repeats,
                                     detail::mix_seed(opts.seed, 0x70690000, static_cast<std::uint64_t>(k)),
                                     opts.defaults);

    // Candidates: every column under ROAR; columns not yet shuffled under PERMUTE.
    AttributionResult candidates;
    candidates.method = attr.method;
    std::vector<Eigen::Index> candidate_cols;
    for (Eigen::Index j = 0; j < current.cols(); ++j)
      if (opts.mode == Mode::Roar || !permuted[static_cast<std::size_t>(j)]) candidate_cols.push_back(j);
    candidates.global_scores.resize(static_cast<Eigen::Index>(candidate_cols.size()));
    for (std::size_t c = 0; c < candidate_cols.size(); ++c) {
      candidates.global_scores(static_cast<Eigen::Index>(c)) = attr.global_scores(candidate_cols[c]);
      candidates.feature_names.push_back(attr.feature_names[static_cast<std::size_t>(candidate_cols[c])]);
    }

    const auto [msf, smsf] = most_significant(candidates);
    double fcp = 0.0;
    try {
      fcp = compute_fcp(smsf, candidates.global_scores);
    } catch (const MetricError& e) {
      rec.diagnostic = e.what();
      report.records.push_back(rec);
      report.truncated = true;
      break;
    }
    rec.msf = msf;
    rec.band = compute_band(rec.accuracy, fcp);
    if (rec.accuracy < 0.0) {
      if (!rec.diagnostic.empty()) rec.diagnostic += "; ";
      rec.diagnostic += "negative metric; expected change taken in magnitude";
    }
    previous = rec.band;
    report.records.push_back(rec);

    const Eigen::Index col = *current.index_of(msf);
    if (opts.mode == Mode::Roar) {
      current = current.drop_column(col);
    } else {
      permuted[static_cast<std::size_t>(col)] = true;
      current = current.with_column(
          col, shuffled(current.features().col(col),
                        detail::mix_seed(opts.seed, 0x7065726d, static_cast<std::uint64_t>(k))));
    }
  }
  return report;
}

/// Fraction of records inside the previous iteration's band, among records
/// where that test applies.
inline double band_hit_rate(const CampaignReport& r) {
  std::size_t tested = 0, hits = 0;
  for (const auto& rec : r.records) {
    if (!rec.within_previous_band) continue;
    ++tested;
    hits += *rec.within_previous_band ? 1 : 0;
  }
  if (tested == 0) throw MetricError("band_hit_rate: no record has a previous band");
  return static_cast<double>(hits) / static_cast<double>(tested);
}

// ---------------------------------------------------------------------------
// CSV serialization: iteration,msf,accuracy,li,ui,within

inline std::string to_csv(const CampaignReport& r) {
  std::string out = "iteration,msf,accuracy,li,ui,within\n";
  for (const auto& rec : r.records) {
    out += std::to_string(rec.iteration) + ',' + rec.msf + ',' + detail::fixed4(rec.accuracy) + ',';
    if (rec.band) out += detail::fixed4(rec.band->lower) + ',' + detail::fixed4(rec.band->upper);
    else out += ',';
    out += ',';
    if (rec.within_previous_band) out += *rec.within_previous_band ? '1' : '0';
    out += '\n';
  }
  return out;
}

/// Reads records back from `to_csv` output. Only the serialized fields are
/// restored; band lower/upper are set, the other band fields are zero.
inline CampaignReport parse_campaign_csv(std::istream& in) {
  CampaignReport r;
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "iteration,msf,accuracy,li,ui,within")
    throw DataError("campaign CSV: unexpected header");
  std::size_t line_no = 1;
  auto real = [&](const std::string& cell) {
    auto v = detail::parse_real(cell);
    if (!v) throw DataError("campaign CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split(detail::trim(line), ',');
    if (cells.size() != 6) throw DataError("campaign CSV line " + std::to_string(line_no) + ": expected 6 cells");
    IterationRecord rec;
    rec.iteration = static_cast<int>(real(cells[0]));
    rec.msf = cells[1];
    rec.accuracy = real(cells[2]);
    if (!cells[3].empty() || !cells[4].empty()) {
      EaiBand b;
      b.lower = real(cells[3]);
      b.upper = real(cells[4]);
      rec.band = b;
    }
    if (cells[5] == "1") rec.within_previous_band = true;
    else if (cells[5] == "0") rec.within_previous_band = false;
    else if (!cells[5].empty()) throw DataError("campaign CSV line " + std::to_string(line_no) + ": bad flag");
    r.records.push_back(std::move(rec));
  }
  return r;
}

}  // namespace eai
