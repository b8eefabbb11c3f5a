// Copyright 2026 The igates Authors
//
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

#include <stdexcept>
#include <string>

namespace igates {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with inputs violating its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of a function (e.g. t outside [0, tf]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The fixed-step integrator lost trace or positivity; carries the time.
class StepSizeError : public Error {
 public:
  StepSizeError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Spectral gap closed at a sample; carries the sample index.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, std::size_t index) : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The CZ conditional phase did not cross the requested value inside the bracket.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Krotov backtracking exhausted without lowering the functional.
class StagnationError : public Error {
 public:
  StagnationError(const std::string& what, double last_j) : Error(what), last_j_(last_j) {}
  double last_j() const { return last_j_; }

 private:
  double last_j_;
};

/// Process-matrix reconstruction has a significantly negative eigenvalue.
class NonPhysicalError : public Error {
 public:
  using Error::Error;
};

}  // namespace igates
