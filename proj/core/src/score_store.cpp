// core/src/score_store.cpp

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

#include "llrcal/score_store.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "llrcal/errors.hpp"

namespace llrcal {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\v\f";

// Splits a line into whitespace-separated tokens after dropping any
// '#' comment tail.
std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos)
    line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(kWhitespace, pos);
    if (start == std::string_view::npos) break;
    auto end = line.find_first_of(kWhitespace, start);
    if (end == std::string_view::npos) end = line.size();
    tokens.push_back(line.substr(start, end - start));
    pos = end;
  }
  return tokens;
}

double parse_value(std::string_view token, std::size_t lineno) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("expected a numeric value, got '" + std::string(token) +
                         "'",
                     lineno);
  if (!std::isfinite(value))
    throw ParseError("non-finite value '" + std::string(token) + "'", lineno);
  return value;
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TrialScores parse_score_file(std::istream& in) {
  TrialScores out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ParseError("expected '<label> <value>', got " +
                           std::to_string(tokens.size()) + " token(s)",
                       lineno);
    const double value = parse_value(tokens[1], lineno);
    if (tokens[0] == "tgt")
      out.targets.push_back(value);
    else if (tokens[0] == "non")
      out.nontargets.push_back(value);
    else
      throw ParseError("unknown label '" + std::string(tokens[0]) +
                           "' (expected 'tgt' or 'non')",
                       lineno);
  }
  if (in.bad()) throw IoError("score stream read failure");
  return out;
}

void write_score_file(const TrialScores& scores, std::ostream& out) {
  std::string text;
  for (double s : scores.targets) text += "tgt " + format_full(s) + '\n';
  for (double s : scores.nontargets) text += "non " + format_full(s) + '\n';
  out << text;
  if (!out) throw IoError("score sink write failure");
}

AffineCalibration read_calibration(std::istream& in) {
  std::optional<double> a, b;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ParseError("expected '<key> <value>'", lineno);
    if (tokens[0] == "a")
      a = parse_value(tokens[1], lineno);
    else if (tokens[0] == "b")
      b = parse_value(tokens[1], lineno);
    // unknown keys are metadata; ignored for forward compatibility
  }
  if (in.bad()) throw IoError("calibration stream read failure");
  if (!a) throw ParseError("calibration is missing field 'a'");
  if (!b) throw ParseError("calibration is missing field 'b'");
  return AffineCalibration(*a, *b);
}

void write_calibration(const AffineCalibration& cal, std::ostream& out) {
  out << "a " << format_full(cal.scale()) << "\nb " << format_full(cal.offset())
      << '\n';
  if (!out) throw IoError("calibration sink write failure");
}

TrialScores load_score_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw IoError("cannot open score file '" + path + "'");
  return parse_score_file(in);
}

void save_score_file(const TrialScores& scores, const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open()) throw IoError("cannot create score file '" + path + "'");
  write_score_file(scores, out);
  out.flush();
  if (!out) throw IoError("error writing score file '" + path + "'");
}

AffineCalibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open())
    throw IoError("cannot open calibration file '" + path + "'");
  return read_calibration(in);
}

void save_calibration(const AffineCalibration& cal, const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open())
    throw IoError("cannot create calibration file '" + path + "'");
  write_calibration(cal, out);
  out.flush();
  if (!out) throw IoError("error writing calibration file '" + path + "'");
}

}  // namespace llrcal
