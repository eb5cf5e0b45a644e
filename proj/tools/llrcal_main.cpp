// tools/llrcal_main.cpp
//
// Command-line front end: fit score-to-LLR calibrations, apply them,
// evaluate calibrated scores, dump DET curves, query the Gaussian LLR
// theory, and generate deterministic synthetic trials.
//
// Exit codes: 0 success, 2 parse error (command line or input text),
// 3 fit/model error, 4 I/O error.

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

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "llrcal/calibration.hpp"
#include "llrcal/errors.hpp"
#include "llrcal/evaluation.hpp"
#include "llrcal/llr_model.hpp"
#include "llrcal/score_store.hpp"
#include "llrcal/synthgen.hpp"

namespace {

// Standard output carries 6 significant digits; files keep full precision.
void print_kv(const char* key, double value) {
  std::printf("%s %.6g\n", key, value);
}

void print_model(const llrcal::CalibratedGaussianLlrModel& model) {
  print_kv("mu", model.mu());
  print_kv("sigma", model.sigma());
  print_kv("dprime", llrcal::dprime(model));
  print_kv("eer", llrcal::eer_of_model(model));
}

struct Options {
  std::string scores_path;
  std::string cal_path;
  std::string out_path;
  std::string report_path;
  std::string method = "cmlg";
  double alpha = 0.5;
  double lo = 0.001;
  double hi = 0.5;
  std::optional<double> eer;
  std::optional<double> mu;
  std::optional<double> decal_a;
  std::optional<double> decal_b;
  std::uint64_t n_tar = 0;
  std::uint64_t n_non = 0;
  std::uint64_t seed = 0;
  llrcal::Quadrature quad;
};

llrcal::CalibratedGaussianLlrModel model_from_flags(const Options& opt) {
  if (opt.eer) return llrcal::from_eer(*opt.eer);
  return llrcal::CalibratedGaussianLlrModel(*opt.mu);
}

int run_calibrate(const Options& opt) {
  const llrcal::TrialScores scores = llrcal::load_score_file(opt.scores_path);
  const llrcal::AffineCalibration cal =
      opt.method == "cmlg" ? llrcal::cmlg_fit(scores, opt.alpha)
                           : llrcal::logreg_fit(scores, opt.alpha);
  llrcal::save_calibration(cal, opt.out_path);
  print_kv("a", cal.scale());
  print_kv("b", cal.offset());
  if (opt.method == "cmlg") {
    const auto model =
        llrcal::implied_llr_model(cal, llrcal::score_stats(scores, opt.alpha));
    print_kv("mu", model.mu());
    print_kv("sigma", model.sigma());
    print_kv("eer", llrcal::eer_of_model(model));
  }
  return 0;
}

int run_apply(const Options& opt) {
  const llrcal::AffineCalibration cal = llrcal::load_calibration(opt.cal_path);
  const llrcal::TrialScores scores = llrcal::load_score_file(opt.scores_path);
  llrcal::save_score_file(llrcal::apply_calibration(cal, scores),
                          opt.out_path);
  return 0;
}

int run_evaluate(const Options& opt) {
  const llrcal::TrialScores llrs = llrcal::load_score_file(opt.scores_path);
  const llrcal::EvaluationReport report = llrcal::evaluate(llrs);
  std::ofstream out(opt.report_path);
  if (!out.is_open())
    throw llrcal::IoError("cannot create report file '" + opt.report_path +
                          "'");
  llrcal::write_report(report, out);
  out.flush();
  if (!out)
    throw llrcal::IoError("error writing report file '" + opt.report_path +
                          "'");
  print_kv("min_cllr", report.min_cllr);
  print_kv("cllr", report.cllr);
  print_kv("eer", report.eer);
  return 0;
}

int run_det(const Options& opt) {
  const llrcal::TrialScores llrs = llrcal::load_score_file(opt.scores_path);
  const llrcal::DetCurve curve = llrcal::det_curve(llrs);
  {
    std::ofstream out(opt.out_path);
    if (!out.is_open())
      throw llrcal::IoError("cannot create DET file '" + opt.out_path + "'");
    llrcal::write_det_csv(curve, out);
    out.flush();
    if (!out)
      throw llrcal::IoError("error writing DET file '" + opt.out_path + "'");
  }
  print_kv("det_slope", llrcal::det_slope(curve, opt.lo, opt.hi));
  return 0;
}

int run_theory(const Options& opt) {
  const auto model = model_from_flags(opt);
  print_model(model);
  print_kv("cllr", llrcal::theoretical_cllr(model, opt.quad));
  return 0;
}

int run_simulate(const Options& opt) {
  llrcal::SynthSpec spec;
  spec.model = model_from_flags(opt);
  spec.n_tar = opt.n_tar;
  spec.n_non = opt.n_non;
  spec.seed = opt.seed;
  if (opt.decal_a)
    spec.decal = llrcal::AffineCalibration(*opt.decal_a, *opt.decal_b);
  llrcal::save_score_file(llrcal::sample_calibrated(spec), opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"llrcal: score-to-LLR calibration and evaluation toolkit"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "fit a score-to-LLR calibration");
  calibrate->add_option("--scores", opt.scores_path, "training score file")
      ->required();
  calibrate->add_option("--out", opt.out_path, "calibration file to write")
      ->required();
  calibrate->add_option("--method", opt.method, "cmlg or logreg")
      ->check(CLI::IsMember({"cmlg", "logreg"}));
  calibrate->add_option("--alpha", opt.alpha, "effective prior weight");

  CLI::App* apply =
      app.add_subcommand("apply", "map raw scores through a calibration");
  apply->add_option("--cal", opt.cal_path, "calibration file")->required();
  apply->add_option("--scores", opt.scores_path, "score file")->required();
  apply->add_option("--out", opt.out_path, "calibrated score file to write")
      ->required();

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "evaluate calibrated LLR scores");
  evaluate->add_option("--scores", opt.scores_path, "LLR score file")
      ->required();
  evaluate->add_option("--report", opt.report_path, "report file to write")
      ->required();

  CLI::App* det = app.add_subcommand("det", "DET curve CSV and probit slope");
  det->add_option("--scores", opt.scores_path, "score file")->required();
  det->add_option("--out", opt.out_path, "CSV file to write")->required();
  det->add_option("--lo", opt.lo, "lower error-rate bound of the slope fit");
  det->add_option("--hi", opt.hi, "upper error-rate bound of the slope fit");

  CLI::App* theory = app.add_subcommand(
      "theory", "closed-form relations of the calibrated Gaussian model");
  auto* theory_eer = theory->add_option("--eer", opt.eer, "equal error rate");
  auto* theory_mu = theory->add_option("--mu", opt.mu, "target-LLR mean");
  theory_eer->excludes(theory_mu);
  theory->add_option("--quad-abs-tol", opt.quad.abs_tol,
                     "quadrature absolute tolerance");
  theory->add_option("--quad-rel-tol", opt.quad.rel_tol,
                     "quadrature relative tolerance");

  CLI::App* simulate =
      app.add_subcommand("simulate", "generate deterministic synthetic trials");
  auto* sim_eer = simulate->add_option("--eer", opt.eer, "equal error rate");
  auto* sim_mu = simulate->add_option("--mu", opt.mu, "target-LLR mean");
  sim_eer->excludes(sim_mu);
  simulate->add_option("--ntar", opt.n_tar, "number of target trials")
      ->required();
  simulate->add_option("--nnon", opt.n_non, "number of non-target trials")
      ->required();
  simulate->add_option("--seed", opt.seed, "stream seed (0 is legal)")
      ->required();
  auto* sim_a = simulate->add_option(
      "--a", opt.decal_a, "ground-truth calibration scale to invert");
  auto* sim_b = simulate->add_option(
      "--b", opt.decal_b, "ground-truth calibration offset to invert");
  sim_a->needs(sim_b);
  sim_b->needs(sim_a);
  simulate->add_option("--out", opt.out_path, "score file to write")
      ->required();

  try {
    app.parse(argc, argv);
    if (theory->parsed() || simulate->parsed()) {
      if (opt.eer.has_value() == opt.mu.has_value()) {
        std::cerr << "exactly one of --eer and --mu is required\n";
        return 2;
      }
    }
    if (calibrate->parsed()) return run_calibrate(opt);
    if (apply->parsed()) return run_apply(opt);
    if (evaluate->parsed()) return run_evaluate(opt);
    if (det->parsed()) return run_det(opt);
    if (theory->parsed()) return run_theory(opt);
    if (simulate->parsed()) return run_simulate(opt);
    return 1;  // unreachable: require_subcommand(1)
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const llrcal::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const llrcal::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  } catch (const llrcal::Error& e) {
    // fit, domain and quadrature errors
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
}
