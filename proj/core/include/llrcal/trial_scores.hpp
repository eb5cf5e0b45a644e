// core/include/llrcal/trial_scores.hpp

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

#include <vector>

namespace llrcal {

/// Labeled trial scores: one list per class. Element order within a list
/// carries no meaning (every consumer is permutation-invariant) and
/// duplicate scores are preserved. Scores must be finite.
struct TrialScores {
  std::vector<double> targets;
  std::vector<double> nontargets;

  friend bool operator==(const TrialScores&, const TrialScores&) = default;
};

/// Throws DomainError if any score in either class is NaN or infinite.
void require_finite(const TrialScores& scores);

/// Throws DomainError naming the offending class if either list is empty.
void require_both_classes(const TrialScores& scores);

}  // namespace llrcal
