// Copyright 2026 The Coalition Authors
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

#include "coalition/error.hpp"

namespace coalition {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyRoster: return "EmptyRoster";
    case ErrorCode::kTooManyPlayers: return "TooManyPlayers";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kInvalidCoalition: return "InvalidCoalition";
    case ErrorCode::kTooLargeForExact: return "TooLargeForExact";
    case ErrorCode::kTooLargeForEnumeration: return "TooLargeForEnumeration";
    case ErrorCode::kZeroSamples: return "ZeroSamples";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kInvalidStructure: return "InvalidStructure";
    case ErrorCode::kBlockTooLarge: return "BlockTooLarge";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace coalition
