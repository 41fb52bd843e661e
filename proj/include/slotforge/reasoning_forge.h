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

// Chain-of-thought targets built from regular examples, and the hybrid
// dataset that mixes both modes behind \think / \no_think control tags.

#ifndef SLOTFORGE_REASONING_FORGE_H_
#define SLOTFORGE_REASONING_FORGE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slotforge/corpus.h"
#include "slotforge/genparse.h"
#include "slotforge/prompt_forge.h"

namespace slotforge {

struct ReasoningTrace {
  std::string transcript;
  // Non-None gold values, deduplicated, by first position in the transcript;
  // values not found verbatim follow in annotation order.
  std::vector<std::string> mentions;
  // Labels in target order; empty when the example did not query slots.
  std::vector<std::string> queried_labels;
  std::vector<std::string> assigned_labels;
  // Assignment sentence. Derived from the label lists when empty.
  std::string justification;
};

ReasoningTrace BuildTrace(
    const Turn &turn,
    const std::optional<std::vector<std::string>> &queried_slots);

// The assignment sentence for a set of assigned and queried labels.
std::string JustificationSentence(const ReasoningTrace &trace);

// Four newline-separated parts: what was heard, the mentions, the queried
// labels, and the label assignment.
std::string RenderTrace(const ReasoningTrace &trace);

// Wraps the trace and the regular target in think/response blocks. Throws
// Error(kSourceTurnMismatch) when `turn` is not the example's source turn.
InstructionExample ForgeReasoningExample(const InstructionExample &regular,
                                         const Turn &turn,
                                         const TagGrammar &grammar = {});

// Tags every regular example no_think and every reasoning example think,
// appends the literal tag to the instruction, and orders the union by
// DeriveSeed(master_seed, call_id + "/" + mode, turn) (ties by id).
// Throws Error(kMismatchedOrigins) unless both sets cover the same turns
// with the same instructions.
std::vector<InstructionExample> ForgeHybridDataset(
    std::span<const InstructionExample> regular_set,
    std::span<const InstructionExample> reasoning_set, uint64_t master_seed);

}  // namespace slotforge

#endif  // SLOTFORGE_REASONING_FORGE_H_
