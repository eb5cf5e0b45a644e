// core/include/llrcal/synthgen.hpp

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

#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

#include "llrcal/calibration.hpp"
#include "llrcal/llr_model.hpp"
#include "llrcal/trial_scores.hpp"

namespace llrcal {

/// Deterministic synthetic trial specification. Identical specs produce
/// bitwise-identical output: sampling never touches environment entropy,
/// platform RNGs or std::normal_distribution.
struct SynthSpec {
  CalibratedGaussianLlrModel model{0.0};
  std::size_t n_tar = 0;
  std::size_t n_non = 0;
  std::uint64_t seed = 0;  // seed 0 is legal
  /// Ground-truth score-to-LLR map; when present, its inverse is applied to
  /// the sampled LLRs so the output is raw scores with known calibration.
  std::optional<AffineCalibration> decal;
};

/// The index-th variate of the seeded counter-based uniform stream, strictly
/// inside (0,1). The stream is a SplitMix64 hash of the counter, so any
/// element can be generated independently and the order of generation does
/// not matter.
double deterministic_uniform(std::uint64_t seed, std::uint64_t index);

/// n normal draws mu + sigma * Phi^{-1}(u_k) taken from stream positions
/// start_index .. start_index + n - 1.
std::vector<double> deterministic_normals(std::size_t n, double mu,
                                          double sigma, std::uint64_t seed,
                                          std::uint64_t start_index = 0);

/// n_tar draws from N(mu, sigma) followed by n_non draws from
/// N(-mu, sigma), consuming stream positions 0 .. n_tar + n_non - 1 in that
/// order (targets first). Applies the inverse of spec.decal when present.
TrialScores sample_calibrated(const SynthSpec& spec);

/// Elementwise inverse map s = (x - b) / a; apply_calibration(cal, result)
/// reproduces the input to within one rounding step.
TrialScores decalibrate(const TrialScores& llrs, const AffineCalibration& cal);

}  // namespace llrcal
