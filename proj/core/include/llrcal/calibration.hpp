// core/include/llrcal/calibration.hpp

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

#include "llrcal/llr_model.hpp"
#include "llrcal/trial_scores.hpp"

namespace llrcal {

/// Monotonic-increasing score-to-LLR map x(s) = a s + b, in nats.
/// Invariant: a > 0 and both parameters finite.
class AffineCalibration {
 public:
  AffineCalibration(double scale, double offset);

  double scale() const noexcept { return a_; }
  double offset() const noexcept { return b_; }

  double operator()(double score) const noexcept { return a_ * score + b_; }

  /// The LLR-to-score map (1/a, -b/a).
  AffineCalibration inverse() const;

 private:
  double a_;
  double b_;
};

/// Per-class sample means and the alpha-weighted pooled variance
/// (population-normalized, i.e. divide by N rather than N-1).
struct ScoreStats {
  double m_e;  // target mean
  double m_d;  // non-target mean
  double v;    // alpha-weighted pooled variance
  std::size_t n_e;
  std::size_t n_d;
  double alpha;
};

ScoreStats score_stats(const TrialScores& scores, double alpha = 0.5);

/// Closed-form constrained maximum-likelihood Gaussian (CMLG) calibration:
/// a = (m_e - m_d) / v, b = -a (m_e + m_d) / 2. Errors on zero pooled
/// variance and on inverted detectors (m_e <= m_d would need a <= 0).
AffineCalibration cmlg_fit(const TrialScores& scores, double alpha = 0.5);

struct LogregOptions {
  int max_iterations = 200;
  double gradient_tol = 1e-8;  // infinity norm of the objective gradient
  double param_cap = 1e6;      // iterates past this are reported as separable
  double ridge = 0.0;          // optional L2 weight; > 0 admits separable data
};

/// Prior-weighted logistic-regression calibration by damped Newton descent
/// on the convex cross-entropy objective (see logreg_objective). Starts from
/// the CMLG solution when available. The effective-prior offset
/// log(alpha/(1-alpha)) is handled internally so the returned offset is
/// prior-independent. Perfectly separable data is an error unless ridge > 0.
AffineCalibration logreg_fit(const TrialScores& scores, double alpha = 0.5,
                             const LogregOptions& opts = {});

/// The objective minimized by logreg_fit, in nats:
///   (alpha/N_e)   sum_targets    softplus(-(a s + b + lambda))
/// + ((1-alpha)/N_d) sum_nontargets softplus(  a s + b + lambda)
/// with lambda = log(alpha/(1-alpha)). At alpha = 1/2 this is the Cllr of
/// the calibrated scores in nats.
double logreg_objective(double a, double b, const TrialScores& scores,
                        double alpha = 0.5);

/// Elementwise application of the map; labels are preserved.
TrialScores apply_calibration(const AffineCalibration& cal,
                              const TrialScores& scores);

/// The calibrated-LLR model implied by CMLG-consistent inputs, with
/// mu = a m_e + b. Verifies the symmetric-mean and variance constraints to
/// within tol and raises FitError(inconsistent_stats) with both residuals
/// otherwise.
CalibratedGaussianLlrModel implied_llr_model(const AffineCalibration& cal,
                                             const ScoreStats& stats,
                                             double tol = 1e-6);

}  // namespace llrcal
