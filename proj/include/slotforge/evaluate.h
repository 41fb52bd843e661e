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

// Scoring of a predictions file against a forged dataset.
//
// Predictions are JSON Lines, {"id": "...", "generation": "..."}, aligned to
// the dataset by id. Gold slots of an example are read back from its target.

#ifndef SLOTFORGE_EVALUATE_H_
#define SLOTFORGE_EVALUATE_H_

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "slotforge/genparse.h"
#include "slotforge/prompt_forge.h"
#include "slotforge/slotmetrics.h"

namespace slotforge {

struct Prediction {
  std::string id;
  std::string generation;
};

// Throws Error(kMalformedLine) naming the line, Error(kInvalidArgument) for a
// repeated id.
std::vector<Prediction> ReadPredictions(std::istream &in);
std::vector<Prediction> LoadPredictions(const std::filesystem::path &path);
void WritePredictions(const std::filesystem::path &path,
                      std::span<const Prediction> predictions);

// Gold slot map of a forged example (queried-but-absent slots read as
// 'None').
SlotMap GoldSlots(const InstructionExample &example,
                  const TagGrammar &grammar = {});

struct Evaluation {
  ScoreReport report;
  std::vector<ParsedGeneration> parsed;      // dataset order
  std::vector<std::string> missing;          // gold ids without a prediction
  int diagnostics = 0;                       // parser findings, all examples
};

// Missing predictions score as malformed. Throws Error(kUnmatchedIds) listing
// prediction ids that are not in the dataset.
Evaluation Evaluate(std::span<const InstructionExample> gold,
                    std::span<const Prediction> predictions,
                    const MatchConfig &config, const TagGrammar &grammar = {});

}  // namespace slotforge

#endif  // SLOTFORGE_EVALUATE_H_
