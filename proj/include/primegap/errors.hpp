/* Copyright 2026 The primegap Authors
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

namespace primegap {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the range where an operation (or a bound) is
// defined: empty prime ranges, validity thresholds, domain errors.
class RangeError : public Error {
public:
  using Error::Error;
};

// A result would not fit in 64 bits.
class OverflowError : public Error {
public:
  using Error::Error;
};

// A caller-side contract was not met (e.g. too few base primes).
class PreconditionError : public Error {
public:
  using Error::Error;
};

// An internal consistency check failed. Indicates a bug.
class InvariantError : public Error {
public:
  using Error::Error;
};

class CheckpointError : public Error {
public:
  using Error::Error;
};

class UnsupportedVersionError : public CheckpointError {
public:
  using CheckpointError::CheckpointError;
};

class IncompatibleResumeError : public CheckpointError {
public:
  using CheckpointError::CheckpointError;
};

} // namespace primegap
