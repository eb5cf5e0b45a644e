// tests/test_calibration.cpp

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

#include <cmath>

#include "doctest.h"
#include "llrcal/calibration.hpp"
#include "llrcal/errors.hpp"
#include "llrcal/evaluation.hpp"
#include "llrcal/synthgen.hpp"
#include "oracles.hpp"

using llrcal::AffineCalibration;
using llrcal::DomainError;
using llrcal::FitError;
using llrcal::TrialScores;

namespace {

// mean 2 / -2, alpha-weighted pooled variance 4 at alpha = 1/2
const TrialScores kSymmetric{{0.0, 4.0}, {-4.0, 0.0}};

TrialScores random_overlapping(oracles::TestRng& rng, int n_each) {
  TrialScores s;
  const double mu = rng.uniform(0.3, 1.5);
  const double sigma = std::sqrt(2.0 * mu);
  for (int i = 0; i < n_each; ++i) {
    s.targets.push_back(rng.normal(mu, sigma));
    s.nontargets.push_back(rng.normal(-mu, sigma));
  }
  return s;
}

}  // namespace

TEST_CASE("AffineCalibration invariants") {
  CHECK_THROWS_AS(AffineCalibration(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(AffineCalibration(-2.0, 1.0), DomainError);
  CHECK_THROWS_AS(AffineCalibration(1.0, std::nan("")), DomainError);
  const AffineCalibration cal(2.0, -1.0);
  CHECK(cal(3.0) == 5.0);
  const auto inv = cal.inverse();
  CHECK(inv(cal(3.25)) == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("score_stats") {
  const auto s = llrcal::score_stats(TrialScores{{1.0, 3.0}, {-1.0, -3.0}}, 0.5);
  CHECK(s.m_e == 2.0);
  CHECK(s.m_d == -2.0);
  CHECK(s.v == 1.0);
  CHECK(s.n_e == 2);
  CHECK(s.n_d == 2);

  // alpha endpoints select one class's deviations
  const TrialScores mixed{{0.0, 2.0}, {10.0, 14.0}};
  CHECK(llrcal::score_stats(mixed, 1.0).v == 1.0);   // target spread only
  CHECK(llrcal::score_stats(mixed, 0.0).v == 4.0);   // non-target spread only

  CHECK(llrcal::score_stats(TrialScores{{5.0}, {0.0}}, 0.5).v == 0.0);

  CHECK_THROWS_WITH_AS(llrcal::score_stats(TrialScores{{}, {1.0}}, 0.5),
                       "no target trials", DomainError);
  CHECK_THROWS_WITH_AS(llrcal::score_stats(TrialScores{{1.0}, {}}, 0.5),
                       "no non-target trials", DomainError);
  CHECK_THROWS_AS(llrcal::score_stats(kSymmetric, 1.5), DomainError);
}

TEST_CASE("cmlg_fit closed form") {
  const auto cal = llrcal::cmlg_fit(kSymmetric, 0.5);
  CHECK(cal.scale() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cal.offset() == doctest::Approx(0.0).epsilon(1e-15));

  // m_e = 10, m_d = 0, v = 5  ->  a = 2, b = -10
  const double r = std::sqrt(5.0);
  const TrialScores shifted{{10.0 - r, 10.0 + r}, {-r, r}};
  const auto cal2 = llrcal::cmlg_fit(shifted, 0.5);
  CHECK(cal2.scale() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(cal2.offset() == doctest::Approx(-10.0).epsilon(1e-14));
}

TEST_CASE("cmlg_fit error kinds") {
  try {
    llrcal::cmlg_fit(TrialScores{{1.0}, {-1.0}}, 0.5);
    FAIL("expected degenerate variance");
  } catch (const FitError& e) {
    CHECK(e.kind() == FitError::Kind::degenerate_variance);
  }
  try {
    llrcal::cmlg_fit(TrialScores{{-1.0, -3.0}, {1.0, 3.0}}, 0.5);
    FAIL("expected inverted detector");
  } catch (const FitError& e) {
    CHECK(e.kind() == FitError::Kind::inverted_detector);
  }
}

TEST_CASE("cmlg equivariance under affine pre-transforms") {
  oracles::TestRng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const TrialScores s = random_overlapping(rng, 50);
    const double p = rng.uniform(0.1, 5.0);
    const double q = rng.uniform(-4.0, 4.0);
    TrialScores transformed;
    for (double x : s.targets) transformed.targets.push_back(p * x + q);
    for (double x : s.nontargets) transformed.nontargets.push_back(p * x + q);
    const double alpha = rng.uniform(0.05, 0.95);
    const auto base = llrcal::cmlg_fit(s, alpha);
    const auto moved = llrcal::cmlg_fit(transformed, alpha);
    CHECK(moved.scale() == doctest::Approx(base.scale() / p).epsilon(1e-9));
    CHECK(moved.offset() ==
          doctest::Approx(base.offset() - base.scale() * q / p).epsilon(1e-8));
  }
}

TEST_CASE("calibrated scores satisfy the fitted constraints") {
  oracles::TestRng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const TrialScores s = random_overlapping(rng, 400);
    const double alpha = rng.uniform(0.1, 0.9);
    const auto cal = llrcal::cmlg_fit(s, alpha);
    const TrialScores llrs = llrcal::apply_calibration(cal, s);
    const auto stats = llrcal::score_stats(llrs, alpha);
    CHECK(std::fabs(stats.m_e + stats.m_d) <= 1e-10);
    CHECK(std::fabs(stats.v - (stats.m_e - stats.m_d)) <= 1e-10);
  }
}

TEST_CASE("apply_calibration") {
  const TrialScores s{{3.0, -1.0}, {0.5}};
  const auto id = llrcal::apply_calibration(AffineCalibration(1.0, 0.0), s);
  CHECK(id == s);
  const auto mapped = llrcal::apply_calibration(AffineCalibration(2.0, -1.0), s);
  CHECK(mapped.targets == std::vector<double>{5.0, -3.0});
  CHECK(mapped.nontargets == std::vector<double>{0.0});
  // inverse undoes the map
  const AffineCalibration cal(0.7, 2.3);
  const auto back =
      llrcal::apply_calibration(cal.inverse(), llrcal::apply_calibration(cal, s));
  for (std::size_t i = 0; i < s.targets.size(); ++i)
    CHECK(back.targets[i] == doctest::Approx(s.targets[i]).epsilon(1e-12));
}

TEST_CASE("implied_llr_model") {
  const llrcal::ScoreStats shifted{10.0, 0.0, 5.0, 2, 2, 0.5};
  const auto model =
      llrcal::implied_llr_model(AffineCalibration(2.0, -10.0), shifted);
  CHECK(model.mu() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(model.sigma() * model.sigma() == doctest::Approx(20.0).epsilon(1e-13));

  const llrcal::ScoreStats symmetric{2.0, -2.0, 4.0, 2, 2, 0.5};
  CHECK(llrcal::implied_llr_model(AffineCalibration(1.0, 0.0), symmetric).mu() ==
        doctest::Approx(2.0).epsilon(1e-14));

  try {
    llrcal::implied_llr_model(AffineCalibration(1.0, 5.0), symmetric);
    FAIL("expected inconsistency");
  } catch (const FitError& e) {
    CHECK(e.kind() == FitError::Kind::inconsistent_stats);
  }
}

TEST_CASE("logreg_fit separable and inverted data") {
  try {
    llrcal::logreg_fit(TrialScores{{1.0}, {-1.0}}, 0.5);
    FAIL("expected separable-data error");
  } catch (const FitError& e) {
    CHECK(e.kind() == FitError::Kind::separable_data);
  }
  // a ridge weight makes separable data fittable
  llrcal::LogregOptions ridge;
  ridge.ridge = 1e-3;
  const auto cal = llrcal::logreg_fit(TrialScores{{1.0}, {-1.0}}, 0.5, ridge);
  CHECK(cal.scale() > 0.0);
  CHECK(std::isfinite(cal.offset()));
}

TEST_CASE("logreg_fit minimizes its objective") {
  oracles::TestRng rng(37);
  for (int rep = 0; rep < 8; ++rep) {
    const TrialScores s = random_overlapping(rng, 120);
    const double alpha = rng.uniform(0.2, 0.8);
    const auto fit = llrcal::logreg_fit(s, alpha);
    // the minimizer dominates any competitor on its own objective
    const auto cmlg = llrcal::cmlg_fit(s, alpha);
    const double c_fit =
        llrcal::logreg_objective(fit.scale(), fit.offset(), s, alpha);
    const double c_cmlg =
        llrcal::logreg_objective(cmlg.scale(), cmlg.offset(), s, alpha);
    CHECK(c_fit <= c_cmlg + 1e-12);
    // and matches a dense refined grid search
    CHECK(std::fabs(c_fit - oracles::grid_search_objective(s, alpha)) <= 1e-3);
  }
}

TEST_CASE("logreg_fit recovers identity on calibrated samples") {
  // Scores sampled from the already-calibrated model: the optimal affine map
  // is the identity, for any alpha thanks to the prior offset handling.
  llrcal::SynthSpec spec;
  spec.model = llrcal::CalibratedGaussianLlrModel(2.0);
  spec.n_tar = 100000;
  spec.n_non = 100000;
  spec.seed = 2024;
  const TrialScores s = llrcal::sample_calibrated(spec);

  const auto balanced = llrcal::logreg_fit(s, 0.5);
  CHECK(balanced.scale() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::fabs(balanced.offset()) <= 0.05);

  const auto skewed = llrcal::logreg_fit(s, 0.2);
  CHECK(skewed.scale() == doctest::Approx(balanced.scale()).epsilon(0.05));
  CHECK(std::fabs(skewed.offset() - balanced.offset()) <= 0.05);
}

TEST_CASE("cmlg and logreg converge on large calibrated samples") {
  llrcal::SynthSpec spec;
  spec.model = llrcal::CalibratedGaussianLlrModel(2.0);
  spec.n_tar = 100000;
  spec.n_non = 100000;
  spec.seed = 4711;
  spec.decal = AffineCalibration(3.0, 0.25);
  const TrialScores raw = llrcal::sample_calibrated(spec);

  const double cllr_cmlg =
      llrcal::empirical_cllr(llrcal::apply_calibration(llrcal::cmlg_fit(raw), raw));
  const double cllr_logreg = llrcal::empirical_cllr(
      llrcal::apply_calibration(llrcal::logreg_fit(raw), raw));
  CHECK(std::fabs(cllr_cmlg - cllr_logreg) <= 0.01);
}

TEST_CASE("logreg_fit domain checks") {
  CHECK_THROWS_AS(llrcal::logreg_fit(kSymmetric, 0.0), DomainError);
  CHECK_THROWS_AS(llrcal::logreg_fit(kSymmetric, 1.0), DomainError);
}
