// core/include/spdml/errors.hpp

// Copyright 2026  spdml authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPDML_ERRORS_HPP_
#define SPDML_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace spdml {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension or order mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: non-convergence, overflow, loss of definiteness.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the SPD admission test.
class NotSpdError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An operation was given fewer samples than it needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: bad parameter values or inconsistent settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or stream.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Solver-level failure on degenerate or infeasible problems.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant was violated; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdml

#endif  // SPDML_ERRORS_HPP_
