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

#include "slotforge/reasoning_forge.h"

#include <algorithm>
#include <map>
#include <set>

#include "slotforge/errors.h"
#include "slotforge/rng.h"

namespace slotforge {

namespace {

std::string Join(std::span<const std::string> items, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

using TurnKey = std::pair<std::string, int>;

}  // namespace

ReasoningTrace BuildTrace(
    const Turn &turn,
    const std::optional<std::vector<std::string>> &queried_slots) {
  ReasoningTrace trace;
  trace.transcript = turn.transcript;
  SlotMap target = BuildTargetSlots(turn.slots, queried_slots);
  if (queried_slots) trace.queried_labels = target.Labels();

  std::vector<std::string> values;
  for (const auto &[label, value] : target) {
    if (IsNoneValue(value)) continue;
    trace.assigned_labels.push_back(label);
    if (std::find(values.begin(), values.end(), value) == values.end()) {
      values.push_back(value);
    }
  }
  std::vector<std::pair<size_t, size_t>> found;  // (position, index)
  std::vector<std::string> missing;
  for (size_t i = 0; i < values.size(); ++i) {
    size_t at = turn.transcript.find(values[i]);
    if (at == std::string::npos) {
      missing.push_back(values[i]);
    } else {
      found.emplace_back(at, i);
    }
  }
  std::stable_sort(found.begin(), found.end());
  for (const auto &[at, i] : found) trace.mentions.push_back(values[i]);
  trace.mentions.insert(trace.mentions.end(), missing.begin(), missing.end());
  trace.justification = JustificationSentence(trace);
  return trace;
}

std::string JustificationSentence(const ReasoningTrace &trace) {
  if (!trace.assigned_labels.empty()) {
    std::string out = "Based on the semantics of " +
                      Join(trace.assigned_labels, ", ") +
                      " slots, the mentions in the utterance can be assigned "
                      "to them.";
    if (trace.assigned_labels.size() < trace.queried_labels.size()) {
      out += " The others are all 'None'";
    }
    return out;
  }
  if (!trace.queried_labels.empty()) {
    return "None of the queried labels can be assigned a mention, so they are "
           "all 'None'";
  }
  return "There are no slot values to assign.";
}

std::string RenderTrace(const ReasoningTrace &trace) {
  std::string out = "I hear the utterance in the audio clip is\n``` " +
                    trace.transcript + " ```\n";
  if (trace.mentions.empty()) {
    out += "I see that there are no information bearing mentions in the "
           "utterance.\n";
  } else {
    out += "I see that the information bearing mentions in the utterance are " +
           Join(trace.mentions, " | ") + ".\n";
  }
  if (trace.queried_labels.empty()) {
    out += "No specific labels are queried for.\n";
  } else {
    out += "The labels queried for are " + Join(trace.queried_labels, ", ") +
           "\n";
  }
  out += trace.justification.empty() ? JustificationSentence(trace)
                                     : trace.justification;
  return out;
}

InstructionExample ForgeReasoningExample(const InstructionExample &regular,
                                         const Turn &turn,
                                         const TagGrammar &grammar) {
  if (regular.mode != ExampleMode::kRegular) {
    throw Error(ErrorCode::kInvalidArgument,
                "example '" + regular.id + "' is not a regular example");
  }
  if (regular.meta.turn != turn.index || regular.audio_ref != turn.audio_ref) {
    throw Error(ErrorCode::kSourceTurnMismatch,
                "example '" + regular.id + "' does not come from turn " +
                    std::to_string(turn.index));
  }
  if (FormatSlotDict(BuildTargetSlots(turn.slots, regular.queried_slots)) !=
      regular.target) {
    throw Error(ErrorCode::kSourceTurnMismatch,
                "example '" + regular.id + "' target disagrees with the turn's "
                "gold slots");
  }

  InstructionExample reasoning = regular;
  reasoning.mode = ExampleMode::kReasoning;
  reasoning.id =
      ExampleId(regular.meta.call_id, regular.meta.turn, ExampleMode::kReasoning);
  reasoning.target = grammar.open_think + "\n" +
                     RenderTrace(BuildTrace(turn, regular.queried_slots)) +
                     "\n" + grammar.close_think + "\n" +
                     grammar.open_response + "\n" + regular.target + "\n" +
                     grammar.close_response;
  return reasoning;
}

std::vector<InstructionExample> ForgeHybridDataset(
    std::span<const InstructionExample> regular_set,
    std::span<const InstructionExample> reasoning_set, uint64_t master_seed) {
  std::map<TurnKey, const InstructionExample *> regular_by_turn;
  for (const InstructionExample &ex : regular_set) {
    if (ex.mode != ExampleMode::kRegular) {
      throw Error(ErrorCode::kMismatchedOrigins,
                  "'" + ex.id + "' in the regular set is not regular");
    }
    if (!regular_by_turn.emplace(TurnKey{ex.meta.call_id, ex.meta.turn}, &ex)
             .second) {
      throw Error(ErrorCode::kMismatchedOrigins,
                  "turn of '" + ex.id + "' appears twice");
    }
  }
  if (regular_set.size() != reasoning_set.size()) {
    throw Error(ErrorCode::kMismatchedOrigins,
                "regular and reasoning sets differ in size");
  }
  std::set<TurnKey> seen;
  for (const InstructionExample &ex : reasoning_set) {
    TurnKey key{ex.meta.call_id, ex.meta.turn};
    auto it = regular_by_turn.find(key);
    if (ex.mode != ExampleMode::kReasoning || it == regular_by_turn.end() ||
        !seen.insert(key).second ||
        it->second->instruction != ex.instruction ||
        it->second->audio_ref != ex.audio_ref) {
      throw Error(ErrorCode::kMismatchedOrigins,
                  "'" + ex.id + "' has no matching regular example");
    }
  }

  struct Keyed {
    uint64_t key;
    InstructionExample example;
  };
  std::vector<Keyed> merged;
  merged.reserve(regular_set.size() + reasoning_set.size());
  auto add = [&](const InstructionExample &ex, ControlTag tag) {
    InstructionExample tagged = ex;
    tagged.control_tag = tag;
    tagged.instruction += ' ';
    tagged.instruction += ControlTagLiteral(tag);
    std::string stream =
        ex.meta.call_id + "/" + std::string(ExampleModeName(ex.mode));
    merged.push_back(
        {DeriveSeed(master_seed, stream, ex.meta.turn), std::move(tagged)});
  };
  for (const auto &ex : regular_set) add(ex, ControlTag::kNoThink);
  for (const auto &ex : reasoning_set) add(ex, ControlTag::kThink);
  std::sort(merged.begin(), merged.end(), [](const Keyed &a, const Keyed &b) {
    if (a.key != b.key) return a.key < b.key;
    return a.example.id < b.example.id;
  });

  std::vector<InstructionExample> out;
  out.reserve(merged.size());
  for (auto &k : merged) out.push_back(std::move(k.example));
  return out;
}

}  // namespace slotforge
