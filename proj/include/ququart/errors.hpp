// Copyright 2026 The Ququart Parity Authors
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

namespace ququart {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A basis index, box id or probe outside its allowed range.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Construction of a state or matrix that breaks a numeric invariant
/// (norm, unitarity, finiteness).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NotABijection : public Error {
 public:
  using Error::Error;
};

/// Permutation is neither a cyclic rotation nor an anticyclic reflection.
class NotInOracleFamily : public Error {
 public:
  using Error::Error;
};

class UnsupportedProbe : public Error {
 public:
  using Error::Error;
};

class NonUnitaryElement : public Error {
 public:
  using Error::Error;
};

class ZeroReference : public Error {
 public:
  using Error::Error;
};

class UndefinedContrast : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

/// Poisson mean beyond what a single counting step may request.
class CountOverflow : public Error {
 public:
  using Error::Error;
};

class ScanError : public Error {
 public:
  using Error::Error;
};

}  // namespace ququart
