// core/include/llrcal/evaluation.hpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "llrcal/trial_scores.hpp"

namespace llrcal {

struct DetPoint {
  double threshold;
  double p_miss;
  double p_fa;
};

/// Probit-warped coordinates of one DET operating point.
struct DetProbitPoint {
  double x_fa;              // Phi^{-1}(p_fa)
  double y_miss;            // Phi^{-1}(p_miss)
  std::size_t point_index;  // index into DetCurve::points
};

/// Empirical detection error trade-off. Thresholds are strictly increasing,
/// p_miss nondecreasing and p_fa nonincreasing along the list; the endpoints
/// (p_miss=0, p_fa=1) and (p_miss=1, p_fa=0) are always present. Tied scores
/// form a single threshold step. probit holds the warped coordinates of every
/// point whose error rates both lie strictly inside (0,1).
struct DetCurve {
  std::vector<DetPoint> points;
  std::vector<DetProbitPoint> probit;
};

struct CalibrationDiagnostics {
  double expect_r_nontarget;   // sample mean of e^x over non-targets
  double expect_inv_r_target;  // sample mean of e^{-x} over targets
  double mean_target_llr;
  double mean_nontarget_llr;
  double tolerance;            // applied to the two expectations
  bool expect_r_ok;            // |E[e^x | non] - 1| <= tolerance
  bool expect_inv_r_ok;        // |E[e^{-x} | tar] - 1| <= tolerance
  bool target_mean_ok;         // mean target LLR >= 0
  bool nontarget_mean_ok;      // mean non-target LLR <= 0

  bool all_ok() const noexcept {
    return expect_r_ok && expect_inv_r_ok && target_mean_ok &&
           nontarget_mean_ok;
  }
};

struct EvaluationReport {
  double cllr;      // bits
  double min_cllr;  // bits
  double eer;       // ROC-convex-hull crossing
  std::optional<double> det_slope;  // absent when the DET curve has fewer
                                    // than two points inside the fit region
  double mean_target_llr;
  double mean_nontarget_llr;
  double expect_r_nontarget;
  double expect_inv_r_target;
  std::size_t n_e;
  std::size_t n_d;
};

/// Calibration-sensitive cost in bits:
///   1/2 [ (1/N_e) sum_tar log2(1+e^{-x}) + (1/N_d) sum_non log2(1+e^{x}) ].
/// Computed through softplus, so arbitrarily large |x| cannot overflow.
double empirical_cllr(const TrialScores& llrs);

/// Cllr after the optimal monotone recalibration: pool-adjacent-violators
/// isotonic posteriors over the pooled sorted scores with class weights
/// giving each class equal total mass, converted back to LLRs. Never exceeds
/// empirical_cllr on the same data.
double min_cllr_pav(const TrialScores& llrs);

DetCurve det_curve(const TrialScores& llrs);

/// Equal-error rate of the ROC convex hull: the value where the hull crosses
/// p_miss = p_fa, linearly interpolated along the hull segment.
double eer_rocch(const TrialScores& llrs);
double eer_rocch(const DetCurve& curve);

/// Least-squares slope of Phi^{-1}(p_miss) against Phi^{-1}(p_fa) over the
/// curve points whose error rates both lie in [lo, hi]. Equal-variance
/// Gaussian score pairs give -1. Throws FitError(insufficient_data) with
/// fewer than two usable points.
double det_slope(const DetCurve& curve, double lo = 0.001, double hi = 0.5);

/// Expectation and sign diagnostics of calibrated LLRs: a well-calibrated
/// set has E[e^x] = 1 over non-targets, E[e^{-x}] = 1 over targets, a
/// nonnegative target mean and a nonpositive non-target mean.
CalibrationDiagnostics calibration_diagnostics(const TrialScores& llrs,
                                               double tolerance);

EvaluationReport evaluate(const TrialScores& llrs);

/// Flat key-value serialization of a report, full precision. det_slope is
/// omitted when absent.
void write_report(const EvaluationReport& report, std::ostream& out);

/// CSV serialization of the curve: "threshold,p_miss,p_fa" header + rows.
void write_det_csv(const DetCurve& curve, std::ostream& out);

}  // namespace llrcal
