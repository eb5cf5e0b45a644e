// core/src/calibration.cpp

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

#include "llrcal/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "llrcal/errors.hpp"

namespace llrcal {

namespace {

double class_mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double mean_sq_dev(const std::vector<double>& xs, double mean) {
  double sum = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    sum += d * d;
  }
  return sum / static_cast<double>(xs.size());
}

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("alpha must lie in [0, 1]");
}

}  // namespace

AffineCalibration::AffineCalibration(double scale, double offset)
    : a_(scale), b_(offset) {
  if (!std::isfinite(scale) || !std::isfinite(offset) || !(scale > 0.0))
    throw DomainError(
        "calibration must have a finite positive scale and a finite offset");
}

AffineCalibration AffineCalibration::inverse() const {
  return AffineCalibration(1.0 / a_, -b_ / a_);
}

ScoreStats score_stats(const TrialScores& scores, double alpha) {
  require_both_classes(scores);
  require_finite(scores);
  require_alpha(alpha);
  const double m_e = class_mean(scores.targets);
  const double m_d = class_mean(scores.nontargets);
  const double v = alpha * mean_sq_dev(scores.targets, m_e) +
                   (1.0 - alpha) * mean_sq_dev(scores.nontargets, m_d);
  return ScoreStats{m_e, m_d, v, scores.targets.size(),
                    scores.nontargets.size(), alpha};
}

AffineCalibration cmlg_fit(const TrialScores& scores, double alpha) {
  const ScoreStats s = score_stats(scores, alpha);
  if (s.v <= 0.0)
    throw FitError(FitError::Kind::degenerate_variance,
                   "cmlg_fit: pooled score variance is zero");
  if (!(s.m_e > s.m_d))
    throw FitError(FitError::Kind::inverted_detector,
                   "cmlg_fit: target mean does not exceed non-target mean "
                   "(the fit would need a non-increasing map)");
  const double a = (s.m_e - s.m_d) / s.v;
  const double b = -a * 0.5 * (s.m_e + s.m_d);
  return AffineCalibration(a, b);
}

double logreg_objective(double a, double b, const TrialScores& scores,
                        double alpha) {
  require_both_classes(scores);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("logreg objective needs alpha strictly inside (0, 1)");
  const double lambda = std::log(alpha / (1.0 - alpha));
  const double w_e = alpha / static_cast<double>(scores.targets.size());
  const double w_d = (1.0 - alpha) / static_cast<double>(scores.nontargets.size());
  double cost = 0.0;
  for (double s : scores.targets) cost += w_e * softplus(-(a * s + b + lambda));
  for (double s : scores.nontargets) cost += w_d * softplus(a * s + b + lambda);
  return cost;
}

AffineCalibration logreg_fit(const TrialScores& scores, double alpha,
                             const LogregOptions& opts) {
  require_both_classes(scores);
  require_finite(scores);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("logreg_fit needs alpha strictly inside (0, 1)");

  // The unregularized ML fit diverges on perfectly separable data; detect it
  // up front (a monotone increasing map separates the classes exactly when
  // every target score exceeds every non-target score).
  const double min_tar =
      *std::min_element(scores.targets.begin(), scores.targets.end());
  const double max_non =
      *std::max_element(scores.nontargets.begin(), scores.nontargets.end());
  if (opts.ridge == 0.0 && min_tar > max_non)
    throw FitError(FitError::Kind::separable_data,
                   "logreg_fit: classes are perfectly separable, the "
                   "unregularized fit diverges (set a ridge weight to fit "
                   "anyway)");

  const double lambda = std::log(alpha / (1.0 - alpha));
  const double w_e = alpha / static_cast<double>(scores.targets.size());
  const double w_d = (1.0 - alpha) / static_cast<double>(scores.nontargets.size());

  // Optimize over (a, c) with c = b + lambda.
  double a = 1e-3;
  double c = 0.0;
  try {
    const AffineCalibration start = cmlg_fit(scores, alpha);
    a = start.scale();
    c = start.offset() + lambda;
  } catch (const FitError&) {
    // fall back to the flat start
  }

  const auto cost_at = [&](double aa, double cc) {
    double cost = 0.5 * opts.ridge * (aa * aa + cc * cc);
    for (double s : scores.targets) cost += w_e * softplus(-(aa * s + cc));
    for (double s : scores.nontargets) cost += w_d * softplus(aa * s + cc);
    return cost;
  };

  double cost = cost_at(a, c);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    // Gradient and Hessian of the weighted cross-entropy at (a, c).
    double g_a = opts.ridge * a;
    double g_c = opts.ridge * c;
    double h_aa = opts.ridge, h_ac = 0.0, h_cc = opts.ridge;
    for (double s : scores.targets) {
      const double t = a * s + c;
      const double p = sigmoid(-t);            // d softplus(-t)/dt = -sigmoid(-t)
      const double w = w_e * p * (1.0 - p);    // shared curvature
      g_a -= w_e * p * s;
      g_c -= w_e * p;
      h_aa += w * s * s;
      h_ac += w * s;
      h_cc += w;
    }
    for (double s : scores.nontargets) {
      const double t = a * s + c;
      const double p = sigmoid(t);
      const double w = w_d * p * (1.0 - p);
      g_a += w_d * p * s;
      g_c += w_d * p;
      h_aa += w * s * s;
      h_ac += w * s;
      h_cc += w;
    }

    if (std::fmax(std::fabs(g_a), std::fabs(g_c)) <= opts.gradient_tol) {
      if (!(a > 0.0))
        throw FitError(FitError::Kind::inverted_detector,
                       "logreg_fit: optimum has non-positive scale; the "
                       "detector looks inverted");
      return AffineCalibration(a, c - lambda);
    }

    // Newton direction; nudge the diagonal when the 2x2 system is singular
    // (e.g. all scores identical).
    double det = h_aa * h_cc - h_ac * h_ac;
    if (!(det > 1e-300) || !std::isfinite(det)) {
      const double bump = 1e-12 * (1.0 + h_aa + h_cc);
      h_aa += bump;
      h_cc += bump;
      det = h_aa * h_cc - h_ac * h_ac;
    }
    double step_a = -(h_cc * g_a - h_ac * g_c) / det;
    double step_c = -(h_aa * g_c - h_ac * g_a) / det;

    // Damping: halve until the convex objective actually decreases.
    double scale = 1.0;
    double next_a = a + step_a;
    double next_c = c + step_c;
    double next_cost = cost_at(next_a, next_c);
    int halvings = 0;
    while (next_cost > cost && halvings < 60) {
      scale *= 0.5;
      next_a = a + scale * step_a;
      next_c = c + scale * step_c;
      next_cost = cost_at(next_a, next_c);
      ++halvings;
    }
    if (next_cost > cost) break;  // at numerical floor; gradient check below

    a = next_a;
    c = next_c;
    cost = next_cost;
    if (std::fmax(std::fabs(a), std::fabs(c)) > opts.param_cap)
      throw FitError(FitError::Kind::separable_data,
                     "logreg_fit: parameters diverged past the cap; data "
                     "looks separable");
  }

  // Re-check the gradient at the final iterate before giving up.
  {
    double g_a = opts.ridge * a;
    double g_c = opts.ridge * c;
    for (double s : scores.targets) {
      const double p = sigmoid(-(a * s + c));
      g_a -= w_e * p * s;
      g_c -= w_e * p;
    }
    for (double s : scores.nontargets) {
      const double p = sigmoid(a * s + c);
      g_a += w_d * p * s;
      g_c += w_d * p;
    }
    const double gnorm = std::fmax(std::fabs(g_a), std::fabs(g_c));
    if (gnorm <= opts.gradient_tol) {
      if (!(a > 0.0))
        throw FitError(FitError::Kind::inverted_detector,
                       "logreg_fit: optimum has non-positive scale; the "
                       "detector looks inverted");
      return AffineCalibration(a, c - lambda);
    }
    throw FitError(FitError::Kind::no_convergence,
                   "logreg_fit: no convergence after " +
                       std::to_string(opts.max_iterations) +
                       " iterations; last iterate a=" + std::to_string(a) +
                       " b=" + std::to_string(c - lambda) +
                       " gradient norm=" + std::to_string(gnorm));
  }
}

TrialScores apply_calibration(const AffineCalibration& cal,
                              const TrialScores& scores) {
  require_finite(scores);
  TrialScores out;
  out.targets.reserve(scores.targets.size());
  out.nontargets.reserve(scores.nontargets.size());
  for (double s : scores.targets) out.targets.push_back(cal(s));
  for (double s : scores.nontargets) out.nontargets.push_back(cal(s));
  return out;
}

CalibratedGaussianLlrModel implied_llr_model(const AffineCalibration& cal,
                                             const ScoreStats& stats,
                                             double tol) {
  const double mu_e = cal(stats.m_e);
  const double mu_d = cal(stats.m_d);
  const double symmetry_residual = mu_e + mu_d;
  const double variance_residual =
      cal.scale() * cal.scale() * stats.v - (mu_e - mu_d);
  if (std::fabs(symmetry_residual) > tol ||
      std::fabs(variance_residual) > tol) {
    throw FitError(FitError::Kind::inconsistent_stats,
                   "implied_llr_model: inputs violate the calibration "
                   "constraints (mean-symmetry residual " +
                       std::to_string(symmetry_residual) +
                       ", variance residual " +
                       std::to_string(variance_residual) + ", tol " +
                       std::to_string(tol) + ")");
  }
  // Rounding can leave mu_e a hair below zero on degenerate-but-consistent
  // inputs; the model requires mu >= 0 exactly.
  return CalibratedGaussianLlrModel(std::fmax(mu_e, 0.0));
}

}  // namespace llrcal
