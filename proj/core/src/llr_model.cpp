// core/src/llr_model.cpp

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

#include "llrcal/llr_model.hpp"

#include <cmath>

#include "llrcal/errors.hpp"

namespace llrcal {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056176;

void require_density(const CalibratedGaussianLlrModel& model) {
  if (model.degenerate())
    throw DomainError(
        "degenerate model (mu = 0) has no densities; only EER and Cllr "
        "queries are defined");
}

}  // namespace

CalibratedGaussianLlrModel::CalibratedGaussianLlrModel(double mu) : mu_(mu) {
  if (!std::isfinite(mu) || !(mu >= 0.0))
    throw DomainError("model mean must be finite and >= 0");
}

CalibratedGaussianLlrModel from_eer(double eer) {
  if (!(eer > 0.0 && eer <= 0.5))
    throw DomainError(
        "eer must lie in (0, 0.5]; an EER above 0.5 means the detector is "
        "inverted and its scores must be flipped first");
  const double z = std_normal_quantile(eer);
  return CalibratedGaussianLlrModel(2.0 * z * z);
}

double eer_of_model(const CalibratedGaussianLlrModel& model) {
  if (model.degenerate()) return 0.5;
  return std_normal_cdf(-model.mu() / model.sigma());
}

double dprime(const CalibratedGaussianLlrModel& model) {
  if (model.degenerate()) return 0.0;
  return 2.0 * model.mu() / model.sigma();
}

double target_log_pdf(const CalibratedGaussianLlrModel& model, double x) {
  require_density(model);
  const double z = (x - model.mu()) / model.sigma();
  return -0.5 * z * z - std::log(model.sigma()) - kLogSqrt2Pi;
}

double nontarget_log_pdf(const CalibratedGaussianLlrModel& model, double x) {
  require_density(model);
  const double z = (x + model.mu()) / model.sigma();
  return -0.5 * z * z - std::log(model.sigma()) - kLogSqrt2Pi;
}

double target_pdf(const CalibratedGaussianLlrModel& model, double x) {
  return std::exp(target_log_pdf(model, x));
}

double nontarget_pdf(const CalibratedGaussianLlrModel& model, double x) {
  return std::exp(nontarget_log_pdf(model, x));
}

double llr_of_llr(const CalibratedGaussianLlrModel& model, double x) {
  return target_log_pdf(model, x) - nontarget_log_pdf(model, x);
}

double posterior_target(double llr, double prior) {
  if (!std::isfinite(llr)) throw DomainError("posterior_target: llr must be finite");
  if (!(prior > 0.0 && prior < 1.0))
    throw DomainError("posterior_target: prior must lie strictly in (0,1)");
  return sigmoid(llr + logit(prior));
}

GaussianPairDiagnosis validate_gaussian_pair(const GaussianPair& pair,
                                             double tol) {
  if (!(pair.sigma_d > 0.0) || !std::isfinite(pair.sigma_d) ||
      !std::isfinite(pair.mu_d))
    throw DomainError("validate_gaussian_pair: need finite mu_d, sigma_d > 0");
  const double log_mass = pair.mu_d + 0.5 * pair.sigma_d * pair.sigma_d;
  return GaussianPairDiagnosis{
      .consistent = std::fabs(log_mass) <= tol,
      .target_mass = std::exp(log_mass),
      .log_target_mass = log_mass,
      .implied_target_mean = pair.mu_d + pair.sigma_d * pair.sigma_d,
      .sigma = pair.sigma_d,
  };
}

double theoretical_cllr(const CalibratedGaussianLlrModel& model,
                        const Quadrature& q) {
  if (model.degenerate()) return 1.0;
  const double nats = expect_under_normal(
      [](double x) { return softplus(-x); }, model.mu(), model.sigma(), q);
  return nats / kLn2;
}

}  // namespace llrcal
