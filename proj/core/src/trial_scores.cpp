// core/src/trial_scores.cpp

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

#include "llrcal/trial_scores.hpp"

#include <cmath>

#include "llrcal/errors.hpp"

namespace llrcal {

void require_finite(const TrialScores& scores) {
  for (double s : scores.targets)
    if (!std::isfinite(s)) throw DomainError("non-finite target score");
  for (double s : scores.nontargets)
    if (!std::isfinite(s)) throw DomainError("non-finite non-target score");
}

void require_both_classes(const TrialScores& scores) {
  if (scores.targets.empty()) throw DomainError("no target trials");
  if (scores.nontargets.empty()) throw DomainError("no non-target trials");
}

}  // namespace llrcal
