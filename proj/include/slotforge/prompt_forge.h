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

// Forging of regular (direct-answer) instruction examples.
//
// Every example is drawn from its own SplitMix64 stream seeded with
// DeriveSeed(master_seed, call_id, turn_index). Draws happen in this order:
//
//   1. prompt case     weighted over plain, with_context, with_query,
//                      with_context_and_query: UniformInt(0, sum(w) - 1)
//                      against cumulative weights
//   2. template index  UniformInt(0, bank_size - 1)
//   3. context size T  UniformInt(0, min(context_max, turn_index))
//                      (context cases only)
//   4. distractors S   UniformInt(distractors_min, distractors_max), then a
//                      partial Fisher-Yates over the sorted candidate pool
//                      (j = UniformInt(i, n - 1)), then Shuffle of the full
//                      queried list (query cases only)

#ifndef SLOTFORGE_PROMPT_FORGE_H_
#define SLOTFORGE_PROMPT_FORGE_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotforge/corpus.h"
#include "slotforge/rng.h"
#include "slotforge/slot_map.h"

namespace slotforge {

enum class PromptCase {
  kPlain = 0,
  kWithContext = 1,
  kWithQuery = 2,
  kWithContextAndQuery = 3,
};
inline constexpr int kNumPromptCases = 4;
inline constexpr std::array<PromptCase, kNumPromptCases> kAllPromptCases = {
    PromptCase::kPlain, PromptCase::kWithContext, PromptCase::kWithQuery,
    PromptCase::kWithContextAndQuery};

std::string_view PromptCaseName(PromptCase c);
std::optional<PromptCase> ParsePromptCase(std::string_view name);
bool CaseHasContext(PromptCase c);
bool CaseHasQuery(PromptCase c);

inline constexpr std::string_view kQueriedSlotsPlaceholder = "{queried_slots}";
inline constexpr std::string_view kContextPlaceholder = "{context}";
inline constexpr std::string_view kDefaultFormatDirective =
    "Format the output as JSON.";

struct PromptTemplate {
  PromptCase prompt_case = PromptCase::kPlain;
  std::string text;
  std::string format_directive = std::string(kDefaultFormatDirective);
};

// Throws Error(kInvalidConfig) if placeholders do not fit the case or the
// directive is missing.
void ValidateTemplate(const PromptTemplate &tmpl);

using TemplateBanks = std::map<PromptCase, std::vector<PromptTemplate>>;

// Ten shipped templates per case.
TemplateBanks DefaultTemplateBanks(
    std::string_view format_directive = kDefaultFormatDirective);

enum class DistractorPool { kCorpus, kDomain };

struct ForgeConfig {
  uint64_t master_seed = 0;
  int context_max = 3;
  int distractors_min = 1;
  int distractors_max = 5;
  int prompts_per_case = 10;
  std::array<int, kNumPromptCases> case_weights = {1, 1, 1, 1};
  DistractorPool distractor_pool = DistractorPool::kCorpus;
  TemplateBanks template_banks = DefaultTemplateBanks();

  // Throws Error(kInvalidConfig).
  void Validate() const;
};

enum class ExampleMode { kRegular, kReasoning };
enum class ControlTag { kThink, kNoThink };

std::string_view ExampleModeName(ExampleMode mode);
std::string_view ControlTagName(ControlTag tag);
// The literal appended to hybrid instructions: "\think" / "\no_think".
std::string_view ControlTagLiteral(ControlTag tag);

struct ExampleMeta {
  std::string call_id;
  int turn = 0;
  int context_size = 0;               // T
  std::optional<int> distractors;     // S as drawn; unset when not queried
  int template_index = 0;
  PromptCase prompt_case = PromptCase::kPlain;
  bool shortfall = false;             // fewer distractor candidates than S

  bool operator==(const ExampleMeta &) const = default;
};

struct InstructionExample {
  std::string id;
  std::string audio_ref;
  std::vector<std::string> context;
  std::string instruction;
  std::optional<std::vector<std::string>> queried_slots;
  ExampleMode mode = ExampleMode::kRegular;
  std::optional<ControlTag> control_tag;
  std::string target;
  ExampleMeta meta;

  bool operator==(const InstructionExample &) const = default;
};

std::string ExampleId(std::string_view call_id, int turn, ExampleMode mode);

// Transcripts of the T turns before `turn_index`, oldest first, with T drawn
// uniformly from 0..min(context_max, turn_index).
std::vector<std::string> SelectContext(const Call &call, int turn_index,
                                       int context_max, SplitMix64 &rng);

struct QueriedSlots {
  std::vector<std::string> labels;
  int drawn = 0;          // S
  bool shortfall = false;
};

// Gold labels plus S distractors drawn from `candidates` minus gold, then
// shuffled. `candidates` must be sorted and duplicate-free.
QueriedSlots SelectQueriedSlots(std::span<const std::string> gold_labels,
                                std::span<const std::string> candidates,
                                int distractors_min, int distractors_max,
                                SplitMix64 &rng);

// Convenience overload over a vocabulary; throws Error(kEmptyVocabulary).
QueriedSlots SelectQueriedSlots(std::span<const std::string> gold_labels,
                                const SlotVocabulary &vocabulary,
                                const ForgeConfig &config, SplitMix64 &rng,
                                std::optional<Domain> domain = std::nullopt);

// Substitutes {queried_slots} (joined by ", ") and {context} (one
// "prev: <text>" line per turn) and appends the format directive. An empty
// context removes the placeholder together with one following newline.
// Throws Error(kUnresolvedPlaceholder).
std::string RenderPrompt(
    const PromptTemplate &tmpl,
    const std::optional<std::vector<std::string>> &queried_slots,
    const std::optional<std::vector<std::string>> &context);

// Slot map a regular target serializes. With a query: exactly the queried
// labels, gold ones first in turn order with their values, then the rest in
// query order as 'None'. Without: exactly the gold map.
SlotMap BuildTargetSlots(
    const SlotMap &gold,
    const std::optional<std::vector<std::string>> &queried_slots);

InstructionExample ForgeRegularExample(const Call &call, int turn_index,
                                       const ForgeConfig &config,
                                       const SlotVocabulary &vocabulary);

}  // namespace slotforge

#endif  // SLOTFORGE_PROMPT_FORGE_H_
