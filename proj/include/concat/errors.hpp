/*
   Copyright 2026 The concat-calc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CONCAT_ERRORS_HPP
#define CONCAT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace concat {

/// Concatenation hypothesis violated: the two pieces disagree at t = 0.
class MatchError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Evaluation request that the exact backend refuses (e^{lambda t} at t != 0
/// is transcendental and must not be faked as a rational).
class EvalError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// The decision procedures require a nonconstant operator.
class ConstantOperatorError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Exact factorization over the Gaussian rationals is not available for this
/// operator (it does not split, or its coefficients exceed desk-scale
/// factoring bounds).
class ExactFactorizationUnavailable : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Simultaneous root iteration failed to converge; carries an iteration dump.
class NonConvergence : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested tolerance within the
/// node budget.
class QuadratureError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operator/point dimension disagreement.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Text input rejected; `position` is a 0-based byte offset into the source.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t position, const std::string& what)
        : std::runtime_error("syntax error at " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

}  // namespace concat

#endif
