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

// Instruction datasets: JSON Lines I/O and whole-corpus forging.
//
// One example per line:
//
//   {"id": "c1/7/regular", "audio": "...", "context": ["..."],
//    "instruction": "...", "queried_slots": ["..."] | null,
//    "mode": "regular", "control_tag": null, "target": "...",
//    "meta": {"call_id": "c1", "turn": 7, "T": 2, "S": 3, "template": 4,
//             "case": "with_context_and_query", "shortfall": false}}

#ifndef SLOTFORGE_DATASET_H_
#define SLOTFORGE_DATASET_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "slotforge/corpus.h"
#include "slotforge/genparse.h"
#include "slotforge/prompt_forge.h"

namespace slotforge {

nlohmann::ordered_json ExampleToJson(const InstructionExample &example);
// Throws Error(kMalformedLine).
InstructionExample ExampleFromJson(const nlohmann::ordered_json &node);

std::string SerializeExample(const InstructionExample &example);
std::string SerializeDataset(std::span<const InstructionExample> examples);
void WriteDataset(const std::filesystem::path &path,
                  std::span<const InstructionExample> examples);
// Throws Error(kMalformedLine) naming the first bad line.
std::vector<InstructionExample> ReadDataset(std::istream &in);
std::vector<InstructionExample> LoadDataset(const std::filesystem::path &path);

enum class ForgeKind { kRegular, kReasoning, kHybrid };

std::string_view ForgeKindName(ForgeKind kind);

struct ForgeOptions {
  // Worker threads; the output does not depend on this.
  int jobs = 1;
  TagGrammar grammar;
};

// One example per turn (two for hybrid). Regular and reasoning output is
// sorted by (call_id, turn); hybrid output keeps its seeded interleaving.
std::vector<InstructionExample> ForgeDataset(std::span<const Call> calls,
                                             const ForgeConfig &config,
                                             ForgeKind kind,
                                             const ForgeOptions &options = {});

struct ForgeStats {
  std::map<std::string, int> by_case;
  std::map<std::string, int> by_mode;
  int shortfalls = 0;
};

ForgeStats SummarizeDataset(std::span<const InstructionExample> examples);

}  // namespace slotforge

#endif  // SLOTFORGE_DATASET_H_
