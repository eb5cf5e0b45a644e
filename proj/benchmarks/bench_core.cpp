// benchmarks/bench_core.cpp

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

#include <benchmark/benchmark.h>

#include "llrcal/calibration.hpp"
#include "llrcal/evaluation.hpp"
#include "llrcal/llr_model.hpp"
#include "llrcal/normal_math.hpp"
#include "llrcal/synthgen.hpp"

namespace {

llrcal::TrialScores make_scores(std::size_t n_each, std::uint64_t seed) {
  llrcal::SynthSpec spec;
  spec.model = llrcal::CalibratedGaussianLlrModel(2.0);
  spec.n_tar = n_each;
  spec.n_non = n_each;
  spec.seed = seed;
  spec.decal = llrcal::AffineCalibration(2.0, -1.0);
  return llrcal::sample_calibrated(spec);
}

void BM_StdNormalCdf(benchmark::State& state) {
  double z = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(llrcal::std_normal_cdf(z));
    z += 1e-5;
    if (z > 6.0) z = -6.0;
  }
}
BENCHMARK(BM_StdNormalCdf);

void BM_StdNormalQuantile(benchmark::State& state) {
  double p = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(llrcal::std_normal_quantile(p));
    p += 1e-7;
    if (p > 1.0 - 1e-6) p = 1e-6;
  }
}
BENCHMARK(BM_StdNormalQuantile);

void BM_TheoreticalCllr(benchmark::State& state) {
  const llrcal::CalibratedGaussianLlrModel model(2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(llrcal::theoretical_cllr(model));
}
BENCHMARK(BM_TheoreticalCllr);

void BM_SampleCalibrated(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_scores(n, 31));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_SampleCalibrated)->Range(1 << 10, 1 << 18);

void BM_CmlgFit(benchmark::State& state) {
  const auto scores = make_scores(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(llrcal::cmlg_fit(scores, 0.5));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_CmlgFit)->Range(1 << 10, 1 << 18);

void BM_LogregFit(benchmark::State& state) {
  const auto scores = make_scores(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(llrcal::logreg_fit(scores, 0.5));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_LogregFit)->Range(1 << 10, 1 << 16);

void BM_EmpiricalCllr(benchmark::State& state) {
  const auto scores = make_scores(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state)
    benchmark::DoNotOptimize(llrcal::empirical_cllr(scores));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_EmpiricalCllr)->Range(1 << 10, 1 << 18);

void BM_MinCllrPav(benchmark::State& state) {
  const auto scores = make_scores(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state)
    benchmark::DoNotOptimize(llrcal::min_cllr_pav(scores));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_MinCllrPav)->Range(1 << 10, 1 << 18);

void BM_DetCurve(benchmark::State& state) {
  const auto scores = make_scores(static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) benchmark::DoNotOptimize(llrcal::det_curve(scores));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_DetCurve)->Range(1 << 10, 1 << 16);

}  // namespace

BENCHMARK_MAIN();
