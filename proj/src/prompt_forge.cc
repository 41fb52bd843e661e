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

#include "slotforge/prompt_forge.h"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "slotforge/errors.h"

namespace slotforge {

namespace {

// Names of all `{identifier}` placeholders in `text`, in order.
std::vector<std::string> Placeholders(std::string_view text) {
  std::vector<std::string> names;
  size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string_view::npos) {
    size_t end = pos + 1;
    while (end < text.size() &&
           ((text[end] >= 'a' && text[end] <= 'z') || text[end] == '_')) {
      ++end;
    }
    if (end > pos + 1 && end < text.size() && text[end] == '}') {
      names.emplace_back(text.substr(pos + 1, end - pos - 1));
      pos = end + 1;
    } else {
      pos = pos + 1;
    }
  }
  return names;
}

void ReplaceAll(std::string *text, std::string_view from, std::string_view to) {
  size_t pos = 0;
  while ((pos = text->find(from, pos)) != std::string::npos) {
    text->replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string Join(std::span<const std::string> items, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

[[noreturn]] void BadConfig(const std::string &why) {
  throw Error(ErrorCode::kInvalidConfig, why);
}

PromptCase DrawCase(const ForgeConfig &config, SplitMix64 &rng) {
  const auto &w = config.case_weights;
  uint64_t total = std::accumulate(w.begin(), w.end(), uint64_t{0});
  uint64_t draw = rng.UniformInt(0, total - 1);
  uint64_t cumulative = 0;
  for (int i = 0; i < kNumPromptCases; ++i) {
    cumulative += static_cast<uint64_t>(w[i]);
    if (draw < cumulative) return static_cast<PromptCase>(i);
  }
  return PromptCase::kWithContextAndQuery;
}

}  // namespace

std::string_view PromptCaseName(PromptCase c) {
  switch (c) {
    case PromptCase::kPlain: return "plain";
    case PromptCase::kWithContext: return "with_context";
    case PromptCase::kWithQuery: return "with_query";
    case PromptCase::kWithContextAndQuery: return "with_context_and_query";
  }
  return "plain";
}

std::optional<PromptCase> ParsePromptCase(std::string_view name) {
  for (PromptCase c : kAllPromptCases) {
    if (PromptCaseName(c) == name) return c;
  }
  return std::nullopt;
}

bool CaseHasContext(PromptCase c) {
  return c == PromptCase::kWithContext || c == PromptCase::kWithContextAndQuery;
}

bool CaseHasQuery(PromptCase c) {
  return c == PromptCase::kWithQuery || c == PromptCase::kWithContextAndQuery;
}

std::string_view ExampleModeName(ExampleMode mode) {
  return mode == ExampleMode::kRegular ? "regular" : "reasoning";
}

std::string_view ControlTagName(ControlTag tag) {
  return tag == ControlTag::kThink ? "think" : "no_think";
}

std::string_view ControlTagLiteral(ControlTag tag) {
  return tag == ControlTag::kThink ? "\\think" : "\\no_think";
}

void ValidateTemplate(const PromptTemplate &tmpl) {
  const std::string where =
      std::string(PromptCaseName(tmpl.prompt_case)) + " template \"" +
      tmpl.text + "\": ";
  bool has_query = false, has_context = false;
  for (const std::string &name : Placeholders(tmpl.text)) {
    if (name == "queried_slots") {
      has_query = true;
    } else if (name == "context") {
      has_context = true;
    } else {
      BadConfig(where + "unknown placeholder {" + name + "}");
    }
  }
  if (has_query != CaseHasQuery(tmpl.prompt_case)) {
    BadConfig(where + (has_query ? "unexpected" : "missing") +
              " {queried_slots}");
  }
  if (has_context != CaseHasContext(tmpl.prompt_case)) {
    BadConfig(where + (has_context ? "unexpected" : "missing") + " {context}");
  }
  if (tmpl.format_directive.empty()) {
    BadConfig(where + "missing output-format directive");
  }
}

void ForgeConfig::Validate() const {
  if (context_max < 0) BadConfig("context_max must be >= 0");
  if (distractors_min < 1) BadConfig("distractors_min must be >= 1");
  if (distractors_max < distractors_min) {
    BadConfig("distractors_max must be >= distractors_min");
  }
  if (prompts_per_case < 1) BadConfig("prompts_per_case must be >= 1");
  int total = 0;
  for (int w : case_weights) {
    if (w < 0) BadConfig("case weights must be >= 0");
    total += w;
  }
  if (total == 0) BadConfig("at least one case weight must be positive");
  for (PromptCase c : kAllPromptCases) {
    auto it = template_banks.find(c);
    size_t size = it == template_banks.end() ? 0 : it->second.size();
    if (size != static_cast<size_t>(prompts_per_case)) {
      BadConfig("template bank '" + std::string(PromptCaseName(c)) + "' has " +
                std::to_string(size) + " entries, expected " +
                std::to_string(prompts_per_case));
    }
    for (const PromptTemplate &tmpl : it->second) {
      if (tmpl.prompt_case != c) {
        BadConfig("template filed under the wrong case: " + tmpl.text);
      }
      ValidateTemplate(tmpl);
    }
  }
}

std::string ExampleId(std::string_view call_id, int turn, ExampleMode mode) {
  return std::string(call_id) + "/" + std::to_string(turn) + "/" +
         std::string(ExampleModeName(mode));
}

std::vector<std::string> SelectContext(const Call &call, int turn_index,
                                       int context_max, SplitMix64 &rng) {
  if (turn_index < 0 || turn_index >= static_cast<int>(call.turns.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "turn index " + std::to_string(turn_index) + " out of range");
  }
  int upper = std::min(context_max, turn_index);
  int size = static_cast<int>(rng.UniformInt(0, static_cast<uint64_t>(upper)));
  std::vector<std::string> context;
  for (int i = turn_index - size; i < turn_index; ++i) {
    context.push_back(call.turns[i].transcript);
  }
  return context;
}

QueriedSlots SelectQueriedSlots(std::span<const std::string> gold_labels,
                                std::span<const std::string> candidates,
                                int distractors_min, int distractors_max,
                                SplitMix64 &rng) {
  QueriedSlots result;
  result.drawn = static_cast<int>(
      rng.UniformInt(static_cast<uint64_t>(distractors_min),
                     static_cast<uint64_t>(distractors_max)));

  std::unordered_set<std::string> gold(gold_labels.begin(), gold_labels.end());
  std::vector<std::string> pool;
  for (const std::string &label : candidates) {
    if (gold.count(label) == 0) pool.push_back(label);
  }
  size_t take = static_cast<size_t>(result.drawn);
  if (pool.size() < take) {
    take = pool.size();
    result.shortfall = true;
  }
  for (size_t i = 0; i < take; ++i) {
    size_t j = static_cast<size_t>(rng.UniformInt(i, pool.size() - 1));
    std::swap(pool[i], pool[j]);
  }

  result.labels.assign(gold_labels.begin(), gold_labels.end());
  result.labels.insert(result.labels.end(), pool.begin(),
                       pool.begin() + static_cast<std::ptrdiff_t>(take));
  rng.Shuffle(std::span<std::string>(result.labels));
  return result;
}

QueriedSlots SelectQueriedSlots(std::span<const std::string> gold_labels,
                                const SlotVocabulary &vocabulary,
                                const ForgeConfig &config, SplitMix64 &rng,
                                std::optional<Domain> domain) {
  if (vocabulary.empty()) {
    throw Error(ErrorCode::kEmptyVocabulary,
                "cannot draw distractors from an empty vocabulary");
  }
  std::vector<std::string> candidates =
      (config.distractor_pool == DistractorPool::kDomain && domain)
          ? vocabulary.Labels(*domain)
          : vocabulary.Labels();
  return SelectQueriedSlots(gold_labels, candidates, config.distractors_min,
                            config.distractors_max, rng);
}

std::string RenderPrompt(
    const PromptTemplate &tmpl,
    const std::optional<std::vector<std::string>> &queried_slots,
    const std::optional<std::vector<std::string>> &context) {
  for (const std::string &name : Placeholders(tmpl.text)) {
    bool resolved = (name == "queried_slots" && queried_slots.has_value()) ||
                    (name == "context" && context.has_value());
    if (!resolved) {
      throw Error(ErrorCode::kUnresolvedPlaceholder,
                  "{" + name + "} in \"" + tmpl.text + "\"");
    }
  }
  std::string text = tmpl.text;
  if (context) {
    if (context->empty()) {
      std::string with_newline = std::string(kContextPlaceholder) + "\n";
      ReplaceAll(&text, with_newline, "");
      ReplaceAll(&text, kContextPlaceholder, "");
    } else {
      std::vector<std::string> lines;
      for (const std::string &turn : *context) lines.push_back("prev: " + turn);
      ReplaceAll(&text, kContextPlaceholder, Join(lines, "\n"));
    }
  }
  if (queried_slots) {
    ReplaceAll(&text, kQueriedSlotsPlaceholder, Join(*queried_slots, ", "));
  }
  if (!tmpl.format_directive.empty()) {
    text += ' ';
    text += tmpl.format_directive;
  }
  return text;
}

SlotMap BuildTargetSlots(
    const SlotMap &gold,
    const std::optional<std::vector<std::string>> &queried_slots) {
  if (!queried_slots) return gold;
  std::unordered_set<std::string> queried(queried_slots->begin(),
                                          queried_slots->end());
  SlotMap target;
  for (const auto &[label, value] : gold) {
    if (queried.count(label) > 0) target.Set(label, value);
  }
  for (const std::string &label : *queried_slots) {
    if (!target.Contains(label)) target.Set(label, kNoneValue);
  }
  return target;
}

InstructionExample ForgeRegularExample(const Call &call, int turn_index,
                                       const ForgeConfig &config,
                                       const SlotVocabulary &vocabulary) {
  if (turn_index < 0 || turn_index >= static_cast<int>(call.turns.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "turn index " + std::to_string(turn_index) + " out of range");
  }
  const Turn &turn = call.turns[turn_index];
  SplitMix64 rng(DeriveSeed(config.master_seed, call.call_id, turn_index));

  InstructionExample example;
  example.id = ExampleId(call.call_id, turn_index, ExampleMode::kRegular);
  example.audio_ref = turn.audio_ref;
  example.mode = ExampleMode::kRegular;
  example.meta.call_id = call.call_id;
  example.meta.turn = turn_index;

  PromptCase prompt_case = DrawCase(config, rng);
  const std::vector<PromptTemplate> &bank =
      config.template_banks.at(prompt_case);
  int template_index =
      static_cast<int>(rng.UniformInt(0, bank.size() - 1));
  example.meta.prompt_case = prompt_case;
  example.meta.template_index = template_index;

  std::optional<std::vector<std::string>> context;
  if (CaseHasContext(prompt_case)) {
    context = SelectContext(call, turn_index, config.context_max, rng);
    example.context = *context;
    example.meta.context_size = static_cast<int>(context->size());
  }
  if (CaseHasQuery(prompt_case)) {
    std::vector<std::string> gold = turn.slots.Labels();
    QueriedSlots queried =
        SelectQueriedSlots(gold, vocabulary, config, rng, call.domain);
    example.queried_slots = std::move(queried.labels);
    example.meta.distractors = queried.drawn;
    example.meta.shortfall = queried.shortfall;
  }

  example.instruction =
      RenderPrompt(bank[template_index], example.queried_slots, context);
  example.target =
      FormatSlotDict(BuildTargetSlots(turn.slots, example.queried_slots));
  return example;
}

}  // namespace slotforge
