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

#include "fwa/error.h"

namespace fwa {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedAddress: return "MalformedAddress";
    case ErrorCode::kMalformedPrefix: return "MalformedPrefix";
    case ErrorCode::kNonContiguousMask: return "NonContiguousMask";
    case ErrorCode::kEmptyInterval: return "EmptyInterval";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kNotAnOriginal: return "NotAnOriginal";
    case ErrorCode::kLexError: return "LexError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kLoopDetected: return "LoopDetected";
    case ErrorCode::kUnknownChain: return "UnknownChain";
    case ErrorCode::kUnknownAnchor: return "UnknownAnchor";
    case ErrorCode::kBackwardSkipTo: return "BackwardSkipTo";
    case ErrorCode::kDanglingGroup: return "DanglingGroup";
    case ErrorCode::kSkipPastEnd: return "SkipPastEnd";
    case ErrorCode::kBandOverflow: return "BandOverflow";
    case ErrorCode::kLabelCollision: return "LabelCollision";
    case ErrorCode::kWrongPlatform: return "WrongPlatform";
    case ErrorCode::kTooManyColumns: return "TooManyColumns";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace fwa
