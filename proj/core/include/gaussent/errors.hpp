// Copyright 2026 The gaussent Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace gaussent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-finite entries, bad shot counts, unreadable files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The covariance matrix (or a measured variance) violates the
/// uncertainty bound.
class UnphysicalError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition on its argument does not hold
/// (e.g. a state that is not in standard form).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A closed-form measure was requested outside its domain, e.g. the
/// entanglement of formation of a non-symmetric state.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// A square-root radicand went negative beyond rounding tolerance.
class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

/// Observations are inconsistent with any physical state.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaussent
