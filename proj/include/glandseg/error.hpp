// Copyright 2026 The glandseg Authors
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

#ifndef GLANDSEG_ERROR_HPP
#define GLANDSEG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace glandseg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but too small or too uniform to compute the result.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Unreadable, malformed or inconsistent external data (files, uploads).
class DataError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public DataError {
 public:
  using DataError::DataError;
};

class IntegrityError : public DataError {
 public:
  using DataError::DataError;
};

class UnsupportedVersion : public DataError {
 public:
  using DataError::DataError;
};

/// Decoded image exceeds a caller-imposed width/height limit.
class DimensionLimitExceeded : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace glandseg

#endif  // GLANDSEG_ERROR_HPP
