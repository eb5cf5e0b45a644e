// core/src/normal_math.cpp

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

#include "llrcal/normal_math.hpp"

#include <cmath>
#include <string>

#include "llrcal/errors.hpp"

namespace llrcal {

namespace {

constexpr double kInvSqrtPi = 0.5641895835477562869480794515607726;
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

// erf(t) for 0 <= t < 2, by the positive-term Maclaurin form
//   erf(t) = (2 t / sqrt(pi)) e^{-t^2} sum_{n>=0} (2 t^2)^n / (2n+1)!!
// which has no cancellation anywhere in its range.
double erf_series(double t) {
  const double w = 2.0 * t * t;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= w / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return 2.0 * kInvSqrtPi * t * std::exp(-t * t) * sum;
}

// erfc(t) for t >= 2, by the classical continued fraction
//   sqrt(pi) e^{t^2} erfc(t) = 1 / (t + (1/2)/(t + 1/(t + (3/2)/(t + ...))))
// evaluated with the modified Lentz scheme.
double erfc_continued_fraction(double t) {
  constexpr double kTiny = 1e-300;
  double f = t;
  double c = t;
  double d = 0.0;
  for (int n = 1; n < 400; ++n) {
    const double a = 0.5 * n;
    d = t + a * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = t + a / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-t * t) * kInvSqrtPi / f;
}

// Rational initial estimate for the normal quantile (Wichura's PPND16
// regions and coefficients); accurate to ~1e-16 on its own and polished by
// Halley steps in std_normal_quantile.
double quantile_estimate(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) *
                 r +
             4.5921953931549871457e4) *
                r +
            1.3731693765509461125e4) *
               r +
           1.9715909503065514427e3) *
              r +
          1.3314166789178437745e2) *
             r +
         3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) *
                 r +
             2.1213794301586595867e4) *
                r +
            5.3941960214247511077e3) *
               r +
           6.8718700749205790830e2) *
              r +
          4.2313330701600911252e1) *
             r +
         1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                  r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
    x = num / den;
  }
  return (q < 0.0) ? -x : x;
}

}  // namespace

double std_normal_cdf(double z) {
  if (!std::isfinite(z)) throw DomainError("std_normal_cdf: z must be finite");
  const double t = std::fabs(z) * kInvSqrt2;
  if (t < 2.0) {
    const double e = 0.5 * erf_series(t);
    return (z >= 0.0) ? 0.5 + e : 0.5 - e;
  }
  const double c = 0.5 * erfc_continued_fraction(t);
  return (z >= 0.0) ? 1.0 - c : c;
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("std_normal_quantile: p must lie strictly in (0,1)");
  double x = quantile_estimate(p);
  // Halley refinement against our own CDF; skipped where the density
  // underflows (|x| > ~36, beyond any representable p anyway).
  for (int step = 0; step < 2; ++step) {
    const double density = kInvSqrt2Pi * std::exp(-0.5 * x * x);
    if (!(density > 1e-290)) break;
    const double r = (std_normal_cdf(x) - p) / density;
    x -= r / (1.0 + 0.5 * x * r);
  }
  return x;
}

double normal_pdf(double x, double mu, double sigma) {
  if (!std::isfinite(x) || !std::isfinite(mu))
    throw DomainError("normal_pdf: x and mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("normal_pdf: sigma must be positive and finite");
  const double zscore = (x - mu) / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * zscore * zscore);
}

namespace {

struct SimpsonWorker {
  const std::function<double(double)>& f;
  int splits_left;
  bool exhausted = false;

  struct Piece {
    double value;
    double error;
  };

  static double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  Piece refine(double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    // Richardson: |delta|/15 estimates the error of the refined value.
    if (std::fabs(delta) <= 15.0 * tol || depth >= 60 || splits_left <= 0) {
      if (std::fabs(delta) > 15.0 * tol) exhausted = true;
      return {left + right + delta / 15.0, std::fabs(delta) / 15.0};
    }
    --splits_left;
    const Piece l = refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    const Piece r = refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    return {l.value + r.value, l.error + r.error};
  }
};

}  // namespace

double expect_under_normal(const std::function<double(double)>& f, double mu,
                           double sigma, const Quadrature& q) {
  if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0) || q.max_subdivisions < 1)
    throw DomainError("expect_under_normal: invalid quadrature settings");
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma < 0.0)
    throw DomainError("expect_under_normal: mu, sigma must be finite, sigma >= 0");
  if (sigma == 0.0) return f(mu);

  const auto integrand = [&](double x) { return f(x) * normal_pdf(x, mu, sigma); };
  const double lo = mu - 10.0 * sigma;
  const double hi = mu + 10.0 * sigma;

  SimpsonWorker worker{integrand, q.max_subdivisions};
  const double fa = integrand(lo);
  const double fm = integrand(0.5 * (lo + hi));
  const double fb = integrand(hi);
  const double whole = SimpsonWorker::simpson(lo, hi, fa, fm, fb);
  const double tol = std::fmax(q.abs_tol, q.rel_tol * std::fabs(whole));
  const auto piece = worker.refine(lo, hi, fa, fm, fb, whole, tol, 0);

  const double final_tol =
      std::fmax(q.abs_tol, q.rel_tol * std::fabs(piece.value));
  if (worker.exhausted && piece.error > final_tol) {
    throw QuadratureError(
        piece.value, piece.error,
        "expect_under_normal: subdivision budget exhausted (estimate " +
            std::to_string(piece.value) + ", error bound " +
            std::to_string(piece.error) + ")");
  }
  return piece.value;
}

}  // namespace llrcal
