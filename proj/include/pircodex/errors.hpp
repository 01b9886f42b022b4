// Copyright 2026 The pircodex Authors
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

namespace pircodex {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different fields.
class SpecMismatchError : public Error {
 public:
  using Error::Error;
};

// Arithmetic outside the domain of an operation, e.g. division by zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A generator matrix that does not have full row rank.
class InvalidCodeError : public Error {
 public:
  using Error::Error;
};

// A cyclic generator polynomial that does not divide x^n - 1.
class InvalidPolynomialError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class FieldTooSmallError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured budget.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Inputs violate the hypothesis of a construction.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Node responses are mutually inconsistent with the storage code.
class DecodeIntegrityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pircodex
