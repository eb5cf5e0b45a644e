// core/include/llrcal/score_store.hpp

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

#include <iosfwd>
#include <string>

#include "llrcal/calibration.hpp"
#include "llrcal/trial_scores.hpp"

namespace llrcal {

// Score files are UTF-8 text, one trial per line: a label token ("tgt" or
// "non") then a float, whitespace-separated. '#' starts a comment, blank
// lines are ignored, scientific notation is accepted. Calibrations are flat
// key-value text with keys "a" and "b"; unknown keys are ignored on read.
// Writers emit 17 significant digits, which round-trips binary64 exactly.

/// Throws ParseError with the 1-based line number on malformed lines,
/// unknown labels and non-finite values.
TrialScores parse_score_file(std::istream& in);

void write_score_file(const TrialScores& scores, std::ostream& out);

AffineCalibration read_calibration(std::istream& in);

void write_calibration(const AffineCalibration& cal, std::ostream& out);

// Path-level conveniences. Throw IoError when the file cannot be opened or
// written; parse errors propagate from the stream-level functions.
TrialScores load_score_file(const std::string& path);
void save_score_file(const TrialScores& scores, const std::string& path);
AffineCalibration load_calibration(const std::string& path);
void save_calibration(const AffineCalibration& cal, const std::string& path);

}  // namespace llrcal
