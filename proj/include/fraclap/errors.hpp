// Copyright 2026 The fraclap Authors
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

namespace fraclap {

// Error categories map one-to-one onto CLI exit codes:
// DomainError -> 2, NumericalError -> 3, ResourceError -> 4.

/// Precondition violated by the caller (bad alpha, non-power-of-two N, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double achieved = 0.0)
      : std::runtime_error(what), achieved_(achieved) {}

  /// Achieved error estimate (or residue) at the point of failure.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A dense size cap or planner cap would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what, long long required = 0)
      : std::runtime_error(what), required_(required) {}

  long long required() const noexcept { return required_; }

 private:
  long long required_;
};

}  // namespace fraclap
