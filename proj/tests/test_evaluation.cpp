// tests/test_evaluation.cpp

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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "llrcal/errors.hpp"
#include "llrcal/evaluation.hpp"
#include "llrcal/normal_math.hpp"
#include "llrcal/synthgen.hpp"
#include "oracles.hpp"

using llrcal::DetCurve;
using llrcal::DomainError;
using llrcal::FitError;
using llrcal::TrialScores;

namespace {

TrialScores random_llrs(oracles::TestRng& rng, int max_each) {
  TrialScores s;
  const int n_e = 1 + static_cast<int>(rng.below(max_each));
  const int n_d = 1 + static_cast<int>(rng.below(max_each));
  const double mu = rng.uniform(0.0, 2.0);
  for (int i = 0; i < n_e; ++i) {
    // lattice values now and then force ties across classes
    const double v = rng.uniform() < 0.3
                         ? std::round(rng.uniform(-4.0, 4.0))
                         : rng.normal(mu, 1.0 + mu);
    s.targets.push_back(v);
  }
  for (int i = 0; i < n_d; ++i) {
    const double v = rng.uniform() < 0.3
                         ? std::round(rng.uniform(-4.0, 4.0))
                         : rng.normal(-mu, 1.0 + mu);
    s.nontargets.push_back(v);
  }
  return s;
}

TrialScores shuffled(const TrialScores& s, oracles::TestRng& rng) {
  TrialScores out = s;
  for (auto* v : {&out.targets, &out.nontargets})
    for (std::size_t i = v->size(); i > 1; --i)
      std::swap((*v)[i - 1], (*v)[rng.below(i)]);
  return out;
}

// Analytic DET curve of Gaussian class scores: targets N(mu_e, sigma_e),
// non-targets N(mu_d, sigma_d), swept over a fine threshold grid.
DetCurve analytic_curve(double mu_e, double sigma_e, double mu_d,
                        double sigma_d) {
  DetCurve curve;
  for (int i = 0; i <= 400; ++i) {
    const double t = -8.0 + i * 16.0 / 400.0;
    const double p_miss = llrcal::std_normal_cdf((t - mu_e) / sigma_e);
    const double p_fa = llrcal::std_normal_cdf(-(t - mu_d) / sigma_d);
    curve.points.push_back({t, p_miss, p_fa});
    if (p_miss > 0.0 && p_miss < 1.0 && p_fa > 0.0 && p_fa < 1.0)
      curve.probit.push_back({llrcal::std_normal_quantile(p_fa),
                              llrcal::std_normal_quantile(p_miss),
                              curve.points.size() - 1});
  }
  return curve;
}

}  // namespace

TEST_CASE("empirical_cllr") {
  CHECK(llrcal::empirical_cllr(TrialScores{{0.0, 0.0}, {0.0}}) == 1.0);
  const double ln3 = std::log(3.0);
  CHECK(llrcal::empirical_cllr(TrialScores{{ln3}, {-ln3}}) ==
        doctest::Approx(0.41503749927884381855).epsilon(1e-15));
  // no overflow at extreme LLRs; a perfect huge-margin system costs ~nothing
  const double huge = llrcal::empirical_cllr(TrialScores{{1000.0}, {-1000.0}});
  CHECK(huge == 0.0);
  CHECK(std::isfinite(llrcal::empirical_cllr(TrialScores{{-1000.0}, {1000.0}})));
  CHECK_THROWS_AS(llrcal::empirical_cllr(TrialScores{{}, {1.0}}), DomainError);
}

TEST_CASE("empirical_cllr invariances") {
  oracles::TestRng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const TrialScores s = random_llrs(rng, 30);
    const double base = llrcal::empirical_cllr(s);
    CHECK(llrcal::empirical_cllr(shuffled(s, rng)) ==
          doctest::Approx(base).epsilon(1e-13));
    // appending per-class duplicates in equal proportion leaves the
    // per-class means unchanged
    TrialScores doubled = s;
    doubled.targets.insert(doubled.targets.end(), s.targets.begin(),
                           s.targets.end());
    doubled.nontargets.insert(doubled.nontargets.end(), s.nontargets.begin(),
                              s.nontargets.end());
    CHECK(llrcal::empirical_cllr(doubled) ==
          doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("min_cllr_pav hand cases") {
  CHECK(llrcal::min_cllr_pav(TrialScores{{1.0}, {-1.0}}) <= 1e-6);
  // inverted pair pools into one block: posterior 1/2, LLR 0, one bit
  CHECK(llrcal::min_cllr_pav(TrialScores{{-1.0}, {1.0}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(llrcal::min_cllr_pav(TrialScores{{0.0, 0.0}, {0.0, 0.0}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("min_cllr_pav properties") {
  oracles::TestRng rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const TrialScores s = random_llrs(rng, 15);
    const double min_c = llrcal::min_cllr_pav(s);
    CHECK(min_c <= llrcal::empirical_cllr(s) + 1e-12);
    CHECK(llrcal::min_cllr_pav(shuffled(s, rng)) ==
          doctest::Approx(min_c).epsilon(1e-13));
  }
}

TEST_CASE("min_cllr_pav equals the brute-force monotone optimum") {
  oracles::TestRng rng(29);
  for (int rep = 0; rep < 50; ++rep) {
    const TrialScores s = random_llrs(rng, 4);  // <= 8 trials
    CHECK(llrcal::min_cllr_pav(s) ==
          doctest::Approx(oracles::brute_force_min_cllr(s)).epsilon(1e-9));
  }
}

TEST_CASE("det_curve structure") {
  SUBCASE("separable pair") {
    const DetCurve c = llrcal::det_curve(TrialScores{{1.0}, {0.0}});
    REQUIRE(c.points.size() == 3);
    CHECK(c.points.front().p_miss == 0.0);
    CHECK(c.points.front().p_fa == 1.0);
    CHECK(c.points[1].p_miss == 0.0);
    CHECK(c.points[1].p_fa == 0.0);
    CHECK(c.points[1].threshold == 0.5);
    CHECK(c.points.back().p_miss == 1.0);
    CHECK(c.points.back().p_fa == 0.0);
  }
  SUBCASE("full tie collapses to the two endpoints") {
    const DetCurve c = llrcal::det_curve(TrialScores{{0.0}, {0.0}});
    REQUIRE(c.points.size() == 2);
    CHECK(c.points.front().p_miss == 0.0);
    CHECK(c.points.front().p_fa == 1.0);
    CHECK(c.points.back().p_miss == 1.0);
    CHECK(c.points.back().p_fa == 0.0);
  }
  SUBCASE("monotone against a brute-force sweep") {
    oracles::TestRng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
      const TrialScores s = random_llrs(rng, 25);
      const DetCurve c = llrcal::det_curve(s);
      for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& p = c.points[i];
        if (i > 0) {
          CHECK(p.threshold > c.points[i - 1].threshold);
          CHECK(p.p_miss >= c.points[i - 1].p_miss);
          CHECK(p.p_fa <= c.points[i - 1].p_fa);
        }
        // brute-force recount at this threshold
        double miss = 0.0, fa = 0.0;
        for (double x : s.targets) miss += (x < p.threshold) ? 1.0 : 0.0;
        for (double x : s.nontargets) fa += (x >= p.threshold) ? 1.0 : 0.0;
        CHECK(p.p_miss == miss / static_cast<double>(s.targets.size()));
        CHECK(p.p_fa == fa / static_cast<double>(s.nontargets.size()));
      }
      CHECK(c.points.front().p_miss == 0.0);
      CHECK(c.points.front().p_fa == 1.0);
      CHECK(c.points.back().p_miss == 1.0);
      CHECK(c.points.back().p_fa == 0.0);
    }
  }
}

TEST_CASE("eer_rocch") {
  CHECK(llrcal::eer_rocch(TrialScores{{1.0, 2.0, 3.0}, {-3.0, -2.0, -1.0}}) ==
        0.0);
  // inverted single pair: the hull collapses to the chance diagonal
  CHECK(llrcal::eer_rocch(TrialScores{{-1.0}, {1.0}}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(llrcal::eer_rocch(TrialScores{{0.0, 0.0}, {0.0}}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // hand-built hull: targets {0,2}, nontargets {1,3} -> best achievable
  // (p_miss, p_fa) pairs include (1/2, 1/2) exactly on the diagonal
  CHECK(llrcal::eer_rocch(TrialScores{{0.0, 2.0}, {1.0, 3.0}}) ==
        doctest::Approx(0.5).epsilon(1e-14));

  SUBCASE("invariant under strictly increasing transforms") {
    oracles::TestRng rng(53);
    for (int rep = 0; rep < 20; ++rep) {
      const TrialScores s = random_llrs(rng, 20);
      TrialScores warped;
      for (double x : s.targets)
        warped.targets.push_back(std::atan(x) * 2.0 + std::pow(3.0, x / 20.0));
      for (double x : s.nontargets)
        warped.nontargets.push_back(std::atan(x) * 2.0 + std::pow(3.0, x / 20.0));
      CHECK(llrcal::eer_rocch(warped) ==
            doctest::Approx(llrcal::eer_rocch(s)).epsilon(1e-12));
    }
  }

  SUBCASE("recovers the model EER from a large sample") {
    llrcal::SynthSpec spec;
    spec.model = llrcal::CalibratedGaussianLlrModel(2.0);
    spec.n_tar = 100000;
    spec.n_non = 100000;
    spec.seed = 31;
    const double eer = llrcal::eer_rocch(llrcal::sample_calibrated(spec));
    // se of an EER estimate at this size is ~1.5e-3
    CHECK(std::fabs(eer - 0.15865525393145705) <= 6e-3);
  }
}

TEST_CASE("det_slope") {
  // exact equal-variance Gaussian rates give the -1 line in probit space
  CHECK(llrcal::det_slope(analytic_curve(1.0, 1.0, -1.0, 1.0)) ==
        doctest::Approx(-1.0).epsilon(1e-10));
  // non-target sigma twice the target sigma: slope -sigma_d / sigma_e
  CHECK(llrcal::det_slope(analytic_curve(1.0, 1.0, -1.0, 2.0)) ==
        doctest::Approx(-2.0).epsilon(1e-10));

  // single in-region point
  DetCurve tiny;
  tiny.points.push_back({0.0, 0.2, 0.3});
  tiny.probit.push_back({llrcal::std_normal_quantile(0.3),
                         llrcal::std_normal_quantile(0.2), 0});
  try {
    llrcal::det_slope(tiny);
    FAIL("expected insufficient data");
  } catch (const FitError& e) {
    CHECK(e.kind() == FitError::Kind::insufficient_data);
  }
  CHECK_THROWS_AS(llrcal::det_slope(analytic_curve(1, 1, -1, 1), 0.5, 0.001),
                  DomainError);
}

TEST_CASE("calibration_diagnostics") {
  const auto zeros =
      llrcal::calibration_diagnostics(TrialScores{{0.0, 0.0}, {0.0}}, 1e-12);
  CHECK(zeros.expect_r_nontarget == 1.0);
  CHECK(zeros.expect_inv_r_target == 1.0);
  CHECK(zeros.mean_target_llr == 0.0);
  CHECK(zeros.mean_nontarget_llr == 0.0);
  CHECK(zeros.all_ok());

  const auto bad =
      llrcal::calibration_diagnostics(TrialScores{{-5.0, -5.0}, {0.0}}, 0.5);
  CHECK_FALSE(bad.target_mean_ok);
  CHECK(bad.mean_target_llr == -5.0);

  SUBCASE("sampled calibrated scores pass at statistical tolerance") {
    llrcal::SynthSpec spec;
    spec.model = llrcal::CalibratedGaussianLlrModel(1.0);
    spec.n_tar = 100000;
    spec.n_non = 100000;
    spec.seed = 77;
    const TrialScores s = llrcal::sample_calibrated(spec);
    // var(e^x) for x ~ N(-mu, 2mu) is e^{2mu}-1, so 4 se here is ~0.08
    const auto diag = llrcal::calibration_diagnostics(s, 0.08);
    CHECK(diag.expect_r_ok);
    CHECK(diag.expect_inv_r_ok);
    CHECK(diag.target_mean_ok);
    CHECK(diag.nontarget_mean_ok);
    CHECK(diag.mean_target_llr == doctest::Approx(1.0).epsilon(0.02));
    CHECK(diag.mean_nontarget_llr == doctest::Approx(-1.0).epsilon(0.02));
  }
}

TEST_CASE("evaluate") {
  const auto degenerate =
      llrcal::evaluate(TrialScores{{0.0, 0.0}, {0.0, 0.0}});
  CHECK(degenerate.cllr == 1.0);
  CHECK(degenerate.min_cllr == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(degenerate.eer == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_FALSE(degenerate.det_slope.has_value());
  CHECK(degenerate.n_e == 2);
  CHECK(degenerate.n_d == 2);

  oracles::TestRng rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = random_llrs(rng, 40);
    const auto report = llrcal::evaluate(s);
    CHECK(report.min_cllr <= report.cllr + 1e-12);
    CHECK(report.eer >= 0.0);
    CHECK(report.eer <= 0.5 + 1e-12);
  }
}

TEST_CASE("empirical cllr of a large calibrated sample matches the theory") {
  llrcal::SynthSpec spec;
  spec.model = llrcal::CalibratedGaussianLlrModel(2.0);
  spec.n_tar = 1000000;
  spec.n_non = 1000000;
  spec.seed = 271828;
  const double sampled = llrcal::empirical_cllr(llrcal::sample_calibrated(spec));
  const double exact = llrcal::theoretical_cllr(spec.model);
  CHECK(std::fabs(sampled - exact) <= 0.005);
}

TEST_CASE("report and CSV serialization") {
  llrcal::SynthSpec spec;
  spec.model = llrcal::CalibratedGaussianLlrModel(2.0);
  spec.n_tar = 500;
  spec.n_non = 500;
  spec.seed = 3;
  const auto s = llrcal::sample_calibrated(spec);
  const auto report = llrcal::evaluate(s);

  std::ostringstream out;
  llrcal::write_report(report, out);
  const std::string text = out.str();
  for (const char* key :
       {"cllr ", "min_cllr ", "eer ", "det_slope ", "mean_target_llr ",
        "mean_nontarget_llr ", "expect_r_nontarget ", "expect_inv_r_target ",
        "n_e ", "n_d "})
    CHECK(text.find(key) != std::string::npos);

  std::ostringstream csv;
  llrcal::write_det_csv(llrcal::det_curve(s), csv);
  const std::string csv_text = csv.str();
  CHECK(csv_text.rfind("threshold,p_miss,p_fa\n", 0) == 0);
  const auto rows = static_cast<std::size_t>(
      std::count(csv_text.begin(), csv_text.end(), '\n'));
  CHECK(rows == llrcal::det_curve(s).points.size() + 1);
}
