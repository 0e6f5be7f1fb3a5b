// Copyright 2026 The dsmm Authors.
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

#ifndef DSMM_ERRORS_H_
#define DSMM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dsmm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// A point or shifted point falls outside the lattice.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

// Malformed argument: bad profile, negative lambda, chain missing the anchor.
class ArgumentError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "argument"; }
};

// An enumerating routine was asked to walk more points than the cap allows.
class CapExceededError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "cap_exceeded"; }
};

// A structural requirement (submodularity, schema) does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
};

}  // namespace dsmm

#endif  // DSMM_ERRORS_H_
