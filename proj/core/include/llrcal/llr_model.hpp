// core/include/llrcal/llr_model.hpp

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

#include "llrcal/normal_math.hpp"

namespace llrcal {

/// Score model for well-calibrated log-likelihood-ratios with Gaussian
/// class-conditional distributions. Parameterized by the target-LLR mean mu
/// alone: the non-target mean is -mu and the shared standard deviation is
/// sqrt(2 mu), so the coupling between the two densities holds by
/// construction and cannot be violated by callers.
///
/// mu == 0 is the degenerate no-information model: it answers EER and Cllr
/// queries (0.5 and 1 bit) but has no densities.
class CalibratedGaussianLlrModel {
 public:
  /// mu must be finite and >= 0.
  explicit CalibratedGaussianLlrModel(double mu);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return std::sqrt(2.0 * mu_); }
  double nontarget_mean() const noexcept { return -mu_; }
  bool degenerate() const noexcept { return mu_ == 0.0; }

 private:
  double mu_;
};

/// Model whose equal-error rate is eer, via mu = 2 [Phi^{-1}(eer)]^2.
/// eer must lie in (0, 0.5]; a detector with EER above 0.5 is inverted and
/// the caller must flip its scores first.
CalibratedGaussianLlrModel from_eer(double eer);

/// Equal-error rate Phi(-mu/sigma); 0.5 for the degenerate model.
double eer_of_model(const CalibratedGaussianLlrModel& model);

/// Sensitivity index 2 mu / sigma (equals sigma); 0 for the degenerate model.
double dprime(const CalibratedGaussianLlrModel& model);

/// Class-conditional densities N(x | mu, sigma) and N(x | -mu, sigma).
/// Reject the degenerate model (sigma == 0 has no density).
double target_pdf(const CalibratedGaussianLlrModel& model, double x);
double nontarget_pdf(const CalibratedGaussianLlrModel& model, double x);
double target_log_pdf(const CalibratedGaussianLlrModel& model, double x);
double nontarget_log_pdf(const CalibratedGaussianLlrModel& model, double x);

/// log(target_pdf(x) / nontarget_pdf(x)), evaluated through the model's own
/// densities. For a well-calibrated model this recovers x itself.
double llr_of_llr(const CalibratedGaussianLlrModel& model, double x);

/// Posterior probability of the target hypothesis given an LLR x and a
/// prior pi in (0,1): sigmoid(x + logit(pi)). Stable for |x| far beyond 700.
double posterior_target(double llr, double prior);

/// Candidate non-target Gaussian before the calibration coupling is imposed.
struct GaussianPair {
  double mu_d;
  double sigma_d;
};

struct GaussianPairDiagnosis {
  bool consistent;            // |mu_d + sigma_d^2 / 2| <= tol
  double target_mass;         // integral of e^x N(x | mu_d, sigma_d)
  double log_target_mass;     // mu_d + sigma_d^2 / 2
  double implied_target_mean; // mu_d + sigma_d^2
  double sigma;               // sigma_d, shared by the implied target density
};

/// Checks whether e^x N(x | mu_d, sigma_d) integrates to one, i.e. whether
/// the pair can be the non-target half of a calibrated model, and reports
/// the target Gaussian it implies either way.
GaussianPairDiagnosis validate_gaussian_pair(const GaussianPair& pair,
                                             double tol);

/// Cllr of the model in bits: (1/ln 2) E[ln(1 + e^{-x})] over the target
/// density, by quadrature. Exactly 1 for the degenerate model.
double theoretical_cllr(const CalibratedGaussianLlrModel& model,
                        const Quadrature& q = {});

}  // namespace llrcal
