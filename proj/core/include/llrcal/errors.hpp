// core/include/llrcal/errors.hpp

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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace llrcal {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument was outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. line() is 1-based, or 0 when the error is not tied
/// to a particular line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File or stream I/O failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A calibration fit or metric computation could not be carried out.
class FitError : public Error {
 public:
  enum class Kind {
    degenerate_variance,  // pooled variance is zero
    inverted_detector,    // target scores lie below non-target scores
    separable_data,       // classes perfectly separable, ML fit diverges
    no_convergence,       // iteration limit hit before the tolerance
    inconsistent_stats,   // inputs violate the model constraints
    insufficient_data,    // too few usable points
  };

  FitError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Adaptive quadrature exhausted its subdivision budget before reaching the
/// requested tolerance. Carries the best estimate and its error bound.
class QuadratureError : public Error {
 public:
  QuadratureError(double best_estimate, double error_bound,
                  const std::string& what)
      : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

}  // namespace llrcal
