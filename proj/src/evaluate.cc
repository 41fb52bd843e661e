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

#include "slotforge/evaluate.h"

#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "slotforge/errors.h"
#include "slotforge/io.h"

namespace slotforge {

std::vector<Prediction> ReadPredictions(std::istream &in) {
  std::vector<Prediction> out;
  std::set<std::string> seen;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Prediction p;
    try {
      nlohmann::json node = nlohmann::json::parse(line);
      p.id = node.at("id").get<std::string>();
      p.generation = node.at("generation").get<std::string>();
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(number) + ": " + e.what());
    }
    if (!seen.insert(p.id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "line " + std::to_string(number) + ": repeated id " + p.id);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Prediction> LoadPredictions(const std::filesystem::path &path) {
  std::istringstream in(ReadFile(path));
  try {
    return ReadPredictions(in);
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void WritePredictions(const std::filesystem::path &path,
                      std::span<const Prediction> predictions) {
  std::string body;
  for (const Prediction &p : predictions) {
    nlohmann::ordered_json node;
    node["id"] = p.id;
    node["generation"] = p.generation;
    body += node.dump() + "\n";
  }
  WriteFileAtomic(path, body);
}

SlotMap GoldSlots(const InstructionExample &example,
                  const TagGrammar &grammar) {
  ParsedGeneration parsed = ParseGeneration(example.target, grammar);
  if (parsed.mode == GenerationMode::kMalformed) {
    throw Error(ErrorCode::kMalformedLine,
                "target of " + example.id + " does not parse");
  }
  return parsed.slot_values;
}

Evaluation Evaluate(std::span<const InstructionExample> gold,
                    std::span<const Prediction> predictions,
                    const MatchConfig &config, const TagGrammar &grammar) {
  std::map<std::string_view, const Prediction *> by_id;
  for (const Prediction &p : predictions) by_id[p.id] = &p;

  std::set<std::string_view> gold_ids;
  for (const InstructionExample &ex : gold) gold_ids.insert(ex.id);
  std::vector<std::string> unknown;
  for (const Prediction &p : predictions) {
    if (!gold_ids.contains(p.id)) unknown.push_back(p.id);
  }
  if (!unknown.empty()) {
    std::string list;
    for (const std::string &id : unknown) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::kUnmatchedIds,
                std::to_string(unknown.size()) +
                    " prediction id(s) not in the gold dataset: " + list);
  }

  Evaluation result;
  std::vector<ExampleScore> scores;
  scores.reserve(gold.size());
  for (const InstructionExample &ex : gold) {
    SlotMap gold_slots = GoldSlots(ex, grammar);
    auto it = by_id.find(ex.id);
    if (it == by_id.end()) {
      result.missing.push_back(ex.id);
      result.parsed.push_back({});
      scores.push_back(ScoreMalformed(gold_slots, ex.queried_slots));
      continue;
    }
    ParsedGeneration parsed = ParseGeneration(it->second->generation, grammar);
    result.diagnostics += static_cast<int>(parsed.diagnostics.size());
    if (parsed.mode == GenerationMode::kMalformed) {
      scores.push_back(ScoreMalformed(gold_slots, ex.queried_slots));
    } else {
      scores.push_back(ScoreExample(parsed.slot_values, gold_slots,
                                    ex.queried_slots, config));
    }
    result.parsed.push_back(std::move(parsed));
  }
  result.report = Aggregate(scores, config);
  return result;
}

}  // namespace slotforge
