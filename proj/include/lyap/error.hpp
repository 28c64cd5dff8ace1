// Copyright 2026 The lyapcert Authors
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

namespace lyap {

// Numeric values are part of the C API (see lyap.h) and must stay stable.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NotHermitian = 2,
  NoConvergence = 3,
  DomainViolation = 4,
  SingularRho = 5,
  InvalidDimension = 6,
  DimensionMismatch = 7,
  SupportMismatch = 8,
  SingularState = 9,
  PositivityLost = 10,
  NonUniqueKernel = 11,
  NoSteadyState = 12,
  NonIntegrable = 13,
  InvalidState = 14,
  ConfigError = 15,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the "<code>: " prefix carried by what().
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace lyap
