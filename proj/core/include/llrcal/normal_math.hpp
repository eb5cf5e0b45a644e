// core/include/llrcal/normal_math.hpp

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

#include <cmath>
#include <functional>

namespace llrcal {

/// Controls for the adaptive quadrature behind expect_under_normal.
struct Quadrature {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 1000000;
};

/// Standard normal CDF. Own implementation (series plus continued fraction
/// for the complementary error function) rather than platform libm, so that
/// results are reproducible across systems. Absolute error below 1e-15;
/// saturates to exactly 0/1 in the extreme tails.
double std_normal_cdf(double z);

/// Inverse of std_normal_cdf on (0,1). Rational initial estimate polished by
/// Halley steps against std_normal_cdf. Throws DomainError outside (0,1).
double std_normal_quantile(double p);

/// Gaussian density N(x | mu, sigma). Throws DomainError unless sigma > 0.
double normal_pdf(double x, double mu, double sigma);

/// E[f(X)] for X ~ N(mu, sigma), by adaptive Simpson quadrature on
/// [mu - 10 sigma, mu + 10 sigma]. sigma == 0 returns f(mu). Throws
/// QuadratureError (carrying the best estimate and its error bound) if the
/// subdivision budget runs out before the tolerance is met.
double expect_under_normal(const std::function<double(double)>& f, double mu,
                           double sigma, const Quadrature& q = {});

/// ln(1 + e^t), overflow-free for any t.
inline double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

/// 1 / (1 + e^{-t}), overflow-free for any t.
inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

/// log(p / (1 - p)). Infinite at the endpoints.
inline double logit(double p) { return std::log(p) - std::log1p(-p); }

}  // namespace llrcal
