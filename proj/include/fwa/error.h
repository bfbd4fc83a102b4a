// Copyright 2026 The fwa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FWA_ERROR_H_
#define FWA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fwa {

enum class ErrorCode {
  kMalformedAddress,
  kMalformedPrefix,
  kNonContiguousMask,
  kEmptyInterval,
  kDomainMismatch,
  kNotAnOriginal,
  kLexError,
  kParseError,
  kLoopDetected,
  kUnknownChain,
  kUnknownAnchor,
  kBackwardSkipTo,
  kDanglingGroup,
  kSkipPastEnd,
  kBandOverflow,
  kLabelCollision,
  kWrongPlatform,
  kTooManyColumns,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// All failures raised by the library. Diagnostics that are data (validate,
// translation warnings) are returned, not thrown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fwa

#endif  // FWA_ERROR_H_
