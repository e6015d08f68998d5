// Copyright 2026 The noncp Authors
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

namespace noncp {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition (hermiticity,
/// unit trace, unitarity, anticommutation, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Operand shapes are inconsistent with each other or with stated dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A dimension or scalar argument is outside the supported range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear system needed for reconstruction is rank deficient.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// The requested configuration is outside what the library supports.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace noncp
