// Copyright 2026 The steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEERLAB_ERRORS_HPP
#define STEERLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace steerlab {

/// Base class of every error raised by the library.
///
/// Subclasses fall in two families. Configuration errors (bad parameters,
/// inconsistent shapes, invalid objects) and numerical failures of the
/// solvers. The command-line front end maps the first family to exit code 2
/// and SolverFailure to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix dimensions do not fit together.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Two assemblages do not have the same (inputs, outputs, dim) shape.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// A matrix expected to be positive semidefinite has a clearly negative eigenvalue.
class NotPSD : public Error {
public:
    using Error::Error;
};

/// An object failed its structural validation (assemblage, measurement set, filter).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The requested filter outcome has (numerically) zero probability.
class ZeroProbabilityBranch : public Error {
public:
    using Error::Error;
};

/// A tomography cell received no shots.
class InsufficientCounts : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A numerical solver did not converge.
class SolverFailure : public Error {
public:
    using Error::Error;
};

}  // namespace steerlab

#endif  // STEERLAB_ERRORS_HPP
