// Copyright 2026 The condmaj Authors
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
#include <string_view>

namespace condmaj {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  MajorizationViolation,
  NumericalFailure,
  ShapeError,
  PreconditionViolated,
  DimensionTooLarge,
  InvalidState,
  DomainError,
  NotPure,
  IndexError,
  DegenerateOutcome,
  UsageError,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library. `location` names the offending input
// element (a matrix entry, a column index, a file path) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(code), location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

}  // namespace condmaj
