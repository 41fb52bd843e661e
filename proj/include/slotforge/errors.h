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

#ifndef SLOTFORGE_ERRORS_H_
#define SLOTFORGE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace slotforge {

enum class ErrorCode {
  // corpus
  kMalformedLine,
  kDuplicateCallId,
  kNonContiguousTurns,
  kInvalidRatios,
  // annotator
  kEmptyCall,
  kTransportError,
  kUnparseableAnnotation,
  kInputTooLarge,
  // prompt_forge / reasoning_forge
  kEmptyVocabulary,
  kUnresolvedPlaceholder,
  kSourceTurnMismatch,
  kMismatchedOrigins,
  // genparse
  kNoDictFound,
  kMalformedDict,
  // adapter_sim
  kEmptyInput,
  kDegenerateOutput,
  kShapeMismatch,
  kNonFiniteGradient,
  // report / cli
  kZeroBaseline,
  kIncomparableConfigs,
  kUnmatchedIds,
  // generic
  kInvalidArgument,
  kInvalidConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base exception for every recoverable failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slotforge

#endif  // SLOTFORGE_ERRORS_H_
