// Copyright 2026 The causalkit Authors
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

namespace causalkit {

/// Base class of every error thrown by the library.
///
/// The three direct subclasses partition failures by who can fix them:
/// bad arguments (ValidationError), bad input data (DataError), and
/// numerical breakdown (NumericalError). The CLI maps the categories to
/// exit codes 2, 3 and 4.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// -- dataset ----------------------------------------------------------------

class FileNotFoundError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class HeaderMissingError : public DataError {
 public:
  using DataError::DataError;
};

class UnknownVariableError : public ValidationError {
 public:
  explicit UnknownVariableError(const std::string& name)
      : ValidationError("unknown variable: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NoRowsRemainingError : public DataError {
 public:
  using DataError::DataError;
};

class KTooLargeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConstantSeriesError : public DataError {
 public:
  using DataError::DataError;
};

// -- quantum ----------------------------------------------------------------

class ZeroShotsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularCalibrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// -- independence / lingam --------------------------------------------------

class IllConditionedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConstantRegressorError : public DataError {
 public:
  using DataError::DataError;
};

class SingularDesignError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace causalkit
