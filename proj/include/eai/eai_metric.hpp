#pragma once

// Expected accuracy interval: given the current model metric and the share
// of total attribution held by the top feature, bound the metric expected
// after that feature is removed or permuted.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eai {

class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct EaiBand {
  double initial_acc = 0.0;
  double fcp = 0.0;             // feature contribution percentage, in (0, 1]
  double expected_delta = 0.0;  // |initial_acc| * fcp
  double lower = 0.0;
  double upper = 0.0;
};

/// Share of the top feature's score in the total: smsf / sum(scores).
/// Scores must be non-negative; an all-zero vector means the explainer
/// found nothing and is an error.
inline double compute_fcp(double smsf, const Eigen::VectorXd& all_scores) {
  if (all_scores.size() == 0) throw MetricError("compute_fcp: no scores");
  if (!all_scores.allFinite() || !std::isfinite(smsf))
    throw MetricError("compute_fcp: non-finite score");
  if ((all_scores.array() < 0.0).any() || smsf < 0.0)
    throw MetricError("compute_fcp: scores must be non-negative");
  const double total = all_scores.sum();
  if (total <= 0.0) throw MetricError("no informative feature: all attribution scores are zero");
  if (smsf > all_scores.maxCoeff())
    throw MetricError("compute_fcp: smsf exceeds the largest score");
  return smsf / total;
}

/// [acc - acc*fcp, acc + acc*fcp], unclamped. For a negative metric the
/// delta is taken in magnitude so that lower <= upper still holds.
inline EaiBand compute_band(double initial_acc, double fcp) {
  if (!std::isfinite(initial_acc)) throw MetricError("compute_band: non-finite accuracy");
  if (!(fcp > 0.0 && fcp <= 1.0))
    throw MetricError("compute_band: fcp must lie in (0, 1], got " + std::to_string(fcp));
  EaiBand band;
  band.initial_acc = initial_acc;
  band.fcp = fcp;
  band.expected_delta = std::abs(initial_acc) * fcp;
  band.lower = initial_acc - band.expected_delta;
  band.upper = initial_acc + band.expected_delta;
  return band;
}

/// Closed-interval membership.
inline bool within_band(double next_acc, const EaiBand& band) {
  return band.lower <= next_acc && next_acc <= band.upper;
}

/// Band restricted to [floor, ceiling]; used only for presentation.
inline EaiBand clamp_band(EaiBand band, double floor, double ceiling) {
  band.lower = std::min(std::max(band.lower, floor), ceiling);
  band.upper = std::min(std::max(band.upper, floor), ceiling);
  return band;
}

}  // namespace eai
