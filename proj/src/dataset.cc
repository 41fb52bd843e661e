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

#include "slotforge/dataset.h"

#include <algorithm>
#include <istream>
#include <sstream>
#include <thread>
#include <tuple>

#include "slotforge/errors.h"
#include "slotforge/io.h"
#include "slotforge/reasoning_forge.h"

namespace slotforge {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void Malformed(const std::string &cause) {
  throw Error(ErrorCode::kMalformedLine, cause);
}

const ordered_json &Field(const ordered_json &node, const char *key) {
  auto it = node.find(key);
  if (it == node.end()) Malformed(std::string("missing \"") + key + "\"");
  return *it;
}

std::string StringField(const ordered_json &node, const char *key) {
  const ordered_json &value = Field(node, key);
  if (!value.is_string()) {
    Malformed(std::string("\"") + key + "\" must be a string");
  }
  return value.get<std::string>();
}

std::vector<std::string> StringList(const ordered_json &value,
                                    const char *key) {
  if (!value.is_array()) {
    Malformed(std::string("\"") + key + "\" must be an array");
  }
  std::vector<std::string> out;
  for (const auto &item : value) {
    if (!item.is_string()) {
      Malformed(std::string("\"") + key + "\" must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

int IntField(const ordered_json &node, const char *key) {
  const ordered_json &value = Field(node, key);
  if (!value.is_number_integer()) {
    Malformed(std::string("\"") + key + "\" must be an integer");
  }
  return value.get<int>();
}

bool ExampleOrder(const InstructionExample &a, const InstructionExample &b) {
  return std::tie(a.meta.call_id, a.meta.turn, a.mode) <
         std::tie(b.meta.call_id, b.meta.turn, b.mode);
}

}  // namespace

ordered_json ExampleToJson(const InstructionExample &example) {
  ordered_json node;
  node["id"] = example.id;
  node["audio"] = example.audio_ref;
  node["context"] = example.context;
  node["instruction"] = example.instruction;
  node["queried_slots"] = example.queried_slots
                              ? ordered_json(*example.queried_slots)
                              : ordered_json(nullptr);
  node["mode"] = ExampleModeName(example.mode);
  node["control_tag"] = example.control_tag
                            ? ordered_json(ControlTagName(*example.control_tag))
                            : ordered_json(nullptr);
  node["target"] = example.target;
  ordered_json meta;
  meta["call_id"] = example.meta.call_id;
  meta["turn"] = example.meta.turn;
  meta["T"] = example.meta.context_size;
  meta["S"] = example.meta.distractors ? ordered_json(*example.meta.distractors)
                                       : ordered_json(nullptr);
  meta["template"] = example.meta.template_index;
  meta["case"] = PromptCaseName(example.meta.prompt_case);
  meta["shortfall"] = example.meta.shortfall;
  node["meta"] = std::move(meta);
  return node;
}

InstructionExample ExampleFromJson(const ordered_json &node) {
  if (!node.is_object()) Malformed("record must be a JSON object");
  InstructionExample example;
  example.id = StringField(node, "id");
  example.audio_ref = StringField(node, "audio");
  example.context = StringList(Field(node, "context"), "context");
  example.instruction = StringField(node, "instruction");
  const ordered_json &queried = Field(node, "queried_slots");
  if (!queried.is_null()) {
    example.queried_slots = StringList(queried, "queried_slots");
  }
  std::string mode = StringField(node, "mode");
  if (mode == "regular") {
    example.mode = ExampleMode::kRegular;
  } else if (mode == "reasoning") {
    example.mode = ExampleMode::kReasoning;
  } else {
    Malformed("unknown mode '" + mode + "'");
  }
  const ordered_json &tag = Field(node, "control_tag");
  if (!tag.is_null()) {
    std::string name = tag.is_string() ? tag.get<std::string>() : "";
    if (name == "think") {
      example.control_tag = ControlTag::kThink;
    } else if (name == "no_think") {
      example.control_tag = ControlTag::kNoThink;
    } else {
      Malformed("unknown control_tag '" + name + "'");
    }
  }
  example.target = StringField(node, "target");

  const ordered_json &meta = Field(node, "meta");
  if (!meta.is_object()) Malformed("\"meta\" must be an object");
  example.meta.call_id = StringField(meta, "call_id");
  example.meta.turn = IntField(meta, "turn");
  example.meta.context_size = IntField(meta, "T");
  const ordered_json &s = Field(meta, "S");
  if (!s.is_null()) example.meta.distractors = IntField(meta, "S");
  example.meta.template_index = IntField(meta, "template");
  if (auto it = meta.find("case"); it != meta.end() && it->is_string()) {
    auto parsed = ParsePromptCase(it->get<std::string>());
    if (!parsed) Malformed("unknown case '" + it->get<std::string>() + "'");
    example.meta.prompt_case = *parsed;
  } else {
    bool has_context = example.meta.context_size > 0;
    bool has_query = example.queried_slots.has_value();
    example.meta.prompt_case =
        has_query ? (has_context ? PromptCase::kWithContextAndQuery
                                 : PromptCase::kWithQuery)
                  : (has_context ? PromptCase::kWithContext
                                 : PromptCase::kPlain);
  }
  if (auto it = meta.find("shortfall"); it != meta.end() && it->is_boolean()) {
    example.meta.shortfall = it->get<bool>();
  }
  return example;
}

std::string SerializeExample(const InstructionExample &example) {
  return ExampleToJson(example).dump();
}

std::string SerializeDataset(std::span<const InstructionExample> examples) {
  std::string out;
  for (const auto &example : examples) {
    out += SerializeExample(example);
    out += '\n';
  }
  return out;
}

void WriteDataset(const std::filesystem::path &path,
                  std::span<const InstructionExample> examples) {
  WriteFileAtomic(path, SerializeDataset(examples));
}

std::vector<InstructionExample> ReadDataset(std::istream &in) {
  std::vector<InstructionExample> examples;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      examples.push_back(ExampleFromJson(ordered_json::parse(line)));
    } catch (const nlohmann::json::exception &e) {
      Malformed("line " + std::to_string(line_number) +
                ": invalid JSON: " + e.what());
    } catch (const Error &e) {
      Malformed("line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return examples;
}

std::vector<InstructionExample> LoadDataset(const std::filesystem::path &path) {
  std::istringstream in(ReadFile(path));
  return ReadDataset(in);
}

std::string_view ForgeKindName(ForgeKind kind) {
  switch (kind) {
    case ForgeKind::kRegular: return "regular";
    case ForgeKind::kReasoning: return "reasoning";
    case ForgeKind::kHybrid: return "hybrid";
  }
  return "regular";
}

std::vector<InstructionExample> ForgeDataset(std::span<const Call> calls,
                                             const ForgeConfig &config,
                                             ForgeKind kind,
                                             const ForgeOptions &options) {
  config.Validate();
  const SlotVocabulary vocabulary = BuildVocabulary(calls);

  std::vector<std::pair<const Call *, int>> work;
  for (const Call &call : calls) {
    for (const Turn &turn : call.turns) work.emplace_back(&call, turn.index);
  }

  const bool want_regular = kind != ForgeKind::kReasoning;
  const bool want_reasoning = kind != ForgeKind::kRegular;
  std::vector<InstructionExample> regular(want_regular ? work.size() : 0);
  std::vector<InstructionExample> reasoning(want_reasoning ? work.size() : 0);

  auto forge_range = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const auto &[call, turn_index] = work[i];
      InstructionExample ex =
          ForgeRegularExample(*call, turn_index, config, vocabulary);
      if (want_reasoning) {
        reasoning[i] =
            ForgeReasoningExample(ex, call->turns[turn_index], options.grammar);
      }
      if (want_regular) regular[i] = std::move(ex);
    }
  };

  const size_t jobs = static_cast<size_t>(std::max(1, options.jobs));
  if (jobs == 1 || work.size() < 2) {
    forge_range(0, work.size());
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> threads;
    const size_t chunk = (work.size() + jobs - 1) / jobs;
    for (size_t j = 0; j < jobs; ++j) {
      size_t begin = std::min(work.size(), j * chunk);
      size_t end = std::min(work.size(), begin + chunk);
      threads.emplace_back([&, j, begin, end] {
        try {
          forge_range(begin, end);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto &t : threads) t.join();
    for (auto &e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::sort(regular.begin(), regular.end(), ExampleOrder);
  std::sort(reasoning.begin(), reasoning.end(), ExampleOrder);
  switch (kind) {
    case ForgeKind::kRegular: return regular;
    case ForgeKind::kReasoning: return reasoning;
    case ForgeKind::kHybrid:
      return ForgeHybridDataset(regular, reasoning, config.master_seed);
  }
  return regular;
}

ForgeStats SummarizeDataset(std::span<const InstructionExample> examples) {
  ForgeStats stats;
  for (const auto &ex : examples) {
    ++stats.by_case[std::string(PromptCaseName(ex.meta.prompt_case))];
    std::string mode(ExampleModeName(ex.mode));
    if (ex.control_tag) mode += "+" + std::string(ControlTagName(*ex.control_tag));
    ++stats.by_mode[mode];
    if (ex.meta.shortfall) ++stats.shortfalls;
  }
  return stats;
}

}  // namespace slotforge
