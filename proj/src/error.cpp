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

#include "lyap/error.hpp"

namespace lyap {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::SingularRho: return "SingularRho";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::SingularState: return "SingularState";
    case ErrorCode::PositivityLost: return "PositivityLost";
    case ErrorCode::NonUniqueKernel: return "NonUniqueKernel";
    case ErrorCode::NoSteadyState: return "NoSteadyState";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

}  // namespace lyap
