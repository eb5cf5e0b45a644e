// core/src/synthgen.cpp

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

#include "llrcal/synthgen.hpp"

#include "llrcal/normal_math.hpp"

namespace llrcal {

namespace {

// SplitMix64 finalizer over seed + counter * golden gamma. Counter-based, so
// the stream is identical regardless of how callers batch their draws.
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double deterministic_uniform(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t z = mix64(seed + (index + 1) * kGolden);
  // 53-bit midpoints of [0,1): strictly inside (0,1), quantile-safe.
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> deterministic_normals(std::size_t n, double mu,
                                          double sigma, std::uint64_t seed,
                                          std::uint64_t start_index) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = deterministic_uniform(seed, start_index + k);
    out.push_back(mu + sigma * std_normal_quantile(u));
  }
  return out;
}

TrialScores sample_calibrated(const SynthSpec& spec) {
  const double mu = spec.model.mu();
  const double sigma = spec.model.sigma();
  TrialScores out;
  out.targets = deterministic_normals(spec.n_tar, mu, sigma, spec.seed, 0);
  out.nontargets =
      deterministic_normals(spec.n_non, -mu, sigma, spec.seed, spec.n_tar);
  if (spec.decal) return decalibrate(out, *spec.decal);
  return out;
}

TrialScores decalibrate(const TrialScores& llrs,
                        const AffineCalibration& cal) {
  TrialScores out;
  out.targets.reserve(llrs.targets.size());
  out.nontargets.reserve(llrs.nontargets.size());
  for (double x : llrs.targets)
    out.targets.push_back((x - cal.offset()) / cal.scale());
  for (double x : llrs.nontargets)
    out.nontargets.push_back((x - cal.offset()) / cal.scale());
  return out;
}

}  // namespace llrcal
