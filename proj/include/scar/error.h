// scar/error.h

// Copyright 2026  The scar-efd Authors
//
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

#pragma once

#include <stdexcept>
#include <string>

namespace scar {

// Every failure the library reports derives from Error. The subclasses map
// one-to-one onto the command line exit codes (see cli.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or dimensions that do not agree. Exit code 4.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Invalid hyperparameters or model configuration. Exit code 4.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Non-finite values during optimisation or gradient checking. Exit code 5.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A metric that is undefined for its input, e.g. EER with one class only.
class MetricError : public Error {
 public:
  using Error::Error;
};

// File and dataset problems. Exit code 3.
class DataError : public Error {
 public:
  enum class Kind {
    kIo,
    kMagicMismatch,
    kUnsupportedVersion,
    kTruncated,
    kNonFinite,
    kValidation,
    kConsistency,
    kMissingIds,
    kMissingSplit,
  };

  DataError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace scar
