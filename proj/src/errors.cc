// Copyright 2026 The Slotforge Authors.
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

#include "slotforge/errors.h"

namespace slotforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDuplicateCallId: return "DuplicateCallId";
    case ErrorCode::kNonContiguousTurns: return "NonContiguousTurns";
    case ErrorCode::kInvalidRatios: return "InvalidRatios";
    case ErrorCode::kEmptyCall: return "EmptyCall";
    case ErrorCode::kTransportError: return "TransportError";
    case ErrorCode::kUnparseableAnnotation: return "UnparseableAnnotation";
    case ErrorCode::kInputTooLarge: return "InputTooLarge";
    case ErrorCode::kEmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::kUnresolvedPlaceholder: return "UnresolvedPlaceholder";
    case ErrorCode::kSourceTurnMismatch: return "SourceTurnMismatch";
    case ErrorCode::kMismatchedOrigins: return "MismatchedOrigins";
    case ErrorCode::kNoDictFound: return "NoDictFound";
    case ErrorCode::kMalformedDict: return "MalformedDict";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDegenerateOutput: return "DegenerateOutput";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::kZeroBaseline: return "ZeroBaseline";
    case ErrorCode::kIncomparableConfigs: return "IncomparableConfigs";
    case ErrorCode::kUnmatchedIds: return "UnmatchedIds";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace slotforge
