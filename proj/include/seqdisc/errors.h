// Copyright 2026 The seqdisc Authors
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

#ifndef SEQDISC_ERRORS_H_
#define SEQDISC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace seqdisc {

// An argument lies outside the mathematical domain of the operation
// (overlap outside [0,1], prior outside (0,1/2], ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

// A strategy parameter violates the overlap constraint or its feasible
// interval. The message names the violated bound.
class ConstraintError : public std::invalid_argument {
 public:
  explicit ConstraintError(const std::string &what) : std::invalid_argument(what) {}
};

// A root finder or bracketing search failed to converge.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace seqdisc

#endif  // SEQDISC_ERRORS_H_
