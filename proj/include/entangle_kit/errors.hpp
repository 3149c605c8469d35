/*
 * Copyright 2026 The entangle-kit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ekit {

// Bad input: wrong size, out-of-range index, malformed spec.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Problem size beyond the dense desk-scale limits.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Input violates a mathematical invariant (Hermiticity, positivity, trace).
class ValidationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A formula evaluated outside its domain, e.g. a negative radicand.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iterative solver did not converge or a diagnostic check failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested parameters are outside what an engine supports.
class UnsupportedModelError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace ekit
