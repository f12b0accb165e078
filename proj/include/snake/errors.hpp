// Copyright 2026 The Snake Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace snake {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter is outside its domain (e.g. a <= 0 for Snake).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition was violated.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed, truncated or unsupported serialized data.
class FormatError : public Error {
 public:
  using Error::Error;
};

// The training loss became non-finite.
class TrainingDiverged : public Error {
 public:
  TrainingDiverged(std::size_t step, const std::string& what)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// A CSV file could not be ingested.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// The requested accuracy cannot be reached within the model budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace snake
