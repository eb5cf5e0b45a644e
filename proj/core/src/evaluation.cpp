// core/src/evaluation.cpp

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

#include "llrcal/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "llrcal/errors.hpp"
#include "llrcal/normal_math.hpp"

namespace llrcal {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;

// One pooled score value with the per-class trial counts that share it.
struct PooledScore {
  double score;
  std::size_t n_tar;
  std::size_t n_non;
};

// Sorts both classes together and merges tied scores, so downstream
// algorithms are permutation-invariant and treat ties as a single step.
std::vector<PooledScore> pool_scores(const TrialScores& llrs) {
  std::vector<std::pair<double, bool>> all;  // (score, is_target)
  all.reserve(llrs.targets.size() + llrs.nontargets.size());
  for (double s : llrs.targets) all.emplace_back(s, true);
  for (double s : llrs.nontargets) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<PooledScore> pooled;
  for (const auto& [score, is_target] : all) {
    if (pooled.empty() || pooled.back().score != score)
      pooled.push_back({score, 0, 0});
    if (is_target)
      ++pooled.back().n_tar;
    else
      ++pooled.back().n_non;
  }
  return pooled;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// log of the sample mean of e^x, via log-sum-exp.
double log_mean_exp(const std::vector<double>& xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - m);
  return m + std::log(sum) - std::log(static_cast<double>(xs.size()));
}

void append_double(std::string& s, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

}  // namespace

double empirical_cllr(const TrialScores& llrs) {
  require_both_classes(llrs);
  require_finite(llrs);
  double tar_sum = 0.0;
  for (double x : llrs.targets) tar_sum += softplus(-x);
  double non_sum = 0.0;
  for (double x : llrs.nontargets) non_sum += softplus(x);
  const double nats = 0.5 * (tar_sum / static_cast<double>(llrs.targets.size()) +
                             non_sum / static_cast<double>(llrs.nontargets.size()));
  return nats / kLn2;
}

double min_cllr_pav(const TrialScores& llrs) {
  require_both_classes(llrs);
  require_finite(llrs);
  const auto pooled = pool_scores(llrs);
  const double n_e = static_cast<double>(llrs.targets.size());
  const double n_d = static_cast<double>(llrs.nontargets.size());

  // Isotonic (nondecreasing in score) posteriors by pool-adjacent-violators,
  // with class weights 1/(2 N_e) and 1/(2 N_d) so each class carries equal
  // total mass (effective prior one half).
  struct Block {
    double mass_tar;
    double mass_non;
    std::size_t n_tar;
    std::size_t n_non;
    double posterior() const { return mass_tar / (mass_tar + mass_non); }
  };
  std::vector<Block> blocks;
  blocks.reserve(pooled.size());
  for (const auto& p : pooled) {
    blocks.push_back({static_cast<double>(p.n_tar) / (2.0 * n_e),
                      static_cast<double>(p.n_non) / (2.0 * n_d), p.n_tar,
                      p.n_non});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].posterior() >= blocks.back().posterior()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().mass_tar += top.mass_tar;
      blocks.back().mass_non += top.mass_non;
      blocks.back().n_tar += top.n_tar;
      blocks.back().n_non += top.n_non;
    }
  }

  // Posteriors clipped just inside (0,1) keep the block LLRs finite on
  // separable segments without perturbing the optimum measurably. At large
  // trial counts the clip underflows past ulp(1) and pure blocks saturate to
  // +/-inf LLRs; the per-class guards then charge the exact limiting cost
  // (zero) instead of 0 * inf.
  const double eps = 1e-12 / (n_e + n_d);
  double nats = 0.0;
  for (const Block& b : blocks) {
    const double p = std::clamp(b.posterior(), eps, 1.0 - eps);
    const double llr = logit(p);  // prior log-odds are zero at equal mass
    if (b.n_tar > 0)
      nats += (static_cast<double>(b.n_tar) / n_e) * softplus(-llr);
    if (b.n_non > 0)
      nats += (static_cast<double>(b.n_non) / n_d) * softplus(llr);
  }
  return 0.5 * nats / kLn2;
}

DetCurve det_curve(const TrialScores& llrs) {
  require_both_classes(llrs);
  require_finite(llrs);
  std::vector<double> tar = llrs.targets;
  std::vector<double> non = llrs.nontargets;
  std::sort(tar.begin(), tar.end());
  std::sort(non.begin(), non.end());

  std::vector<double> distinct;
  distinct.reserve(tar.size() + non.size());
  std::merge(tar.begin(), tar.end(), non.begin(), non.end(),
             std::back_inserter(distinct));
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  // Thresholds sit strictly between consecutive distinct scores (plus one
  // sentinel on each side), so each tie group is one step of the staircase.
  std::vector<double> thresholds;
  thresholds.reserve(distinct.size() + 1);
  double below = distinct.front() - 1.0;
  if (!(below < distinct.front()))
    below = std::nextafter(distinct.front(), -HUGE_VAL);
  thresholds.push_back(below);
  for (std::size_t k = 1; k < distinct.size(); ++k)
    thresholds.push_back(0.5 * (distinct[k - 1] + distinct[k]));
  double above = distinct.back() + 1.0;
  if (!(above > distinct.back()))
    above = std::nextafter(distinct.back(), HUGE_VAL);
  thresholds.push_back(above);

  const double n_e = static_cast<double>(tar.size());
  const double n_d = static_cast<double>(non.size());
  DetCurve curve;
  curve.points.reserve(thresholds.size());
  for (double t : thresholds) {
    // Decide "target" iff score >= t: misses are targets below t, false
    // alarms are non-targets at or above it.
    const auto tar_below = static_cast<double>(
        std::lower_bound(tar.begin(), tar.end(), t) - tar.begin());
    const auto non_below = static_cast<double>(
        std::lower_bound(non.begin(), non.end(), t) - non.begin());
    const DetPoint point{t, tar_below / n_e, (n_d - non_below) / n_d};
    if (!curve.points.empty() && !(curve.points.back().threshold < t))
      continue;  // adjacent-ulp scores can collapse a midpoint; skip the dup
    curve.points.push_back(point);
  }

  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const DetPoint& p = curve.points[i];
    if (p.p_miss > 0.0 && p.p_miss < 1.0 && p.p_fa > 0.0 && p.p_fa < 1.0)
      curve.probit.push_back(
          {std_normal_quantile(p.p_fa), std_normal_quantile(p.p_miss), i});
  }
  return curve;
}

double eer_rocch(const DetCurve& curve) {
  // Lower convex hull in (x = p_fa, y = p_miss) space; every point on it is
  // reachable by interpolating between deterministic thresholds.
  struct XY {
    double x, y;
  };
  std::vector<XY> pts;
  pts.reserve(curve.points.size());
  for (const DetPoint& p : curve.points) pts.push_back({p.p_fa, p.p_miss});
  std::sort(pts.begin(), pts.end(), [](const XY& a, const XY& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });

  const auto cross = [](const XY& o, const XY& a, const XY& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<XY> hull;
  for (const XY& p : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) <= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }

  // y - x decreases strictly along the hull; find where it crosses zero.
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const double gap = hull[i].y - hull[i].x;
    if (gap == 0.0) return hull[i].x;
    if (gap < 0.0) {
      // Crossed between i-1 and i (i > 0 because the first vertex has
      // x = 0, y >= 0).
      const double prev_gap = hull[i - 1].y - hull[i - 1].x;
      const double t = prev_gap / (prev_gap - gap);
      return hull[i - 1].x + t * (hull[i].x - hull[i - 1].x);
    }
  }
  return hull.back().x;  // unreachable: the last vertex is (1, 0)
}

double eer_rocch(const TrialScores& llrs) { return eer_rocch(det_curve(llrs)); }

double det_slope(const DetCurve& curve, double lo, double hi) {
  if (!(lo > 0.0 && lo < hi && hi < 1.0))
    throw DomainError("det_slope: need 0 < lo < hi < 1");
  std::vector<const DetProbitPoint*> in_region;
  for (const DetProbitPoint& pp : curve.probit) {
    const DetPoint& p = curve.points[pp.point_index];
    if (p.p_miss >= lo && p.p_miss <= hi && p.p_fa >= lo && p.p_fa <= hi)
      in_region.push_back(&pp);
  }
  if (in_region.size() < 2)
    throw FitError(FitError::Kind::insufficient_data,
                   "det_slope: fewer than two operating points fall inside "
                   "the fit region");
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto* pp : in_region) {
    mean_x += pp->x_fa;
    mean_y += pp->y_miss;
  }
  mean_x /= static_cast<double>(in_region.size());
  mean_y /= static_cast<double>(in_region.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto* pp : in_region) {
    const double dx = pp->x_fa - mean_x;
    sxx += dx * dx;
    sxy += dx * (pp->y_miss - mean_y);
  }
  if (!(sxx > 0.0))
    throw FitError(FitError::Kind::insufficient_data,
                   "det_slope: operating points have no spread in "
                   "Phi^{-1}(p_fa)");
  return sxy / sxx;
}

CalibrationDiagnostics calibration_diagnostics(const TrialScores& llrs,
                                               double tolerance) {
  require_both_classes(llrs);
  require_finite(llrs);
  std::vector<double> neg_targets;
  neg_targets.reserve(llrs.targets.size());
  for (double x : llrs.targets) neg_targets.push_back(-x);

  CalibrationDiagnostics d{};
  d.expect_r_nontarget = std::exp(log_mean_exp(llrs.nontargets));
  d.expect_inv_r_target = std::exp(log_mean_exp(neg_targets));
  d.mean_target_llr = mean_of(llrs.targets);
  d.mean_nontarget_llr = mean_of(llrs.nontargets);
  d.tolerance = tolerance;
  d.expect_r_ok = std::fabs(d.expect_r_nontarget - 1.0) <= tolerance;
  d.expect_inv_r_ok = std::fabs(d.expect_inv_r_target - 1.0) <= tolerance;
  d.target_mean_ok = d.mean_target_llr >= 0.0;
  d.nontarget_mean_ok = d.mean_nontarget_llr <= 0.0;
  return d;
}

EvaluationReport evaluate(const TrialScores& llrs) {
  require_both_classes(llrs);
  require_finite(llrs);
  const DetCurve curve = det_curve(llrs);
  EvaluationReport report{};
  report.cllr = empirical_cllr(llrs);
  report.min_cllr = min_cllr_pav(llrs);
  report.eer = eer_rocch(curve);
  try {
    report.det_slope = det_slope(curve);
  } catch (const FitError&) {
    report.det_slope = std::nullopt;  // too few in-region points
  }
  const CalibrationDiagnostics diag = calibration_diagnostics(llrs, 0.0);
  report.mean_target_llr = diag.mean_target_llr;
  report.mean_nontarget_llr = diag.mean_nontarget_llr;
  report.expect_r_nontarget = diag.expect_r_nontarget;
  report.expect_inv_r_target = diag.expect_inv_r_target;
  report.n_e = llrs.targets.size();
  report.n_d = llrs.nontargets.size();
  return report;
}

void write_report(const EvaluationReport& report, std::ostream& out) {
  std::string text;
  const auto field = [&text](const char* key, double v) {
    text += key;
    text += ' ';
    append_double(text, v);
    text += '\n';
  };
  field("cllr", report.cllr);
  field("min_cllr", report.min_cllr);
  field("eer", report.eer);
  if (report.det_slope) field("det_slope", *report.det_slope);
  field("mean_target_llr", report.mean_target_llr);
  field("mean_nontarget_llr", report.mean_nontarget_llr);
  field("expect_r_nontarget", report.expect_r_nontarget);
  field("expect_inv_r_target", report.expect_inv_r_target);
  text += "n_e " + std::to_string(report.n_e) + '\n';
  text += "n_d " + std::to_string(report.n_d) + '\n';
  out << text;
  if (!out) throw IoError("report write failure");
}

void write_det_csv(const DetCurve& curve, std::ostream& out) {
  std::string text = "threshold,p_miss,p_fa\n";
  for (const DetPoint& p : curve.points) {
    append_double(text, p.threshold);
    text += ',';
    append_double(text, p.p_miss);
    text += ',';
    append_double(text, p.p_fa);
    text += '\n';
  }
  out << text;
  if (!out) throw IoError("DET CSV write failure");
}

}  // namespace llrcal
