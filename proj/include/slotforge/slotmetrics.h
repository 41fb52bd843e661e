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

// Partial-match slot scoring: value normalization, matching, per-example
// outcome counting and micro aggregation.

#ifndef SLOTFORGE_SLOTMETRICS_H_
#define SLOTFORGE_SLOTMETRICS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "slotforge/slot_map.h"

namespace slotforge {

enum class MatchMode { kExact, kContainment };

struct Normalization {
  bool lowercase = true;
  bool compat_fold = true;          // Unicode NFKC
  bool collapse_whitespace = true;
  bool strip_edge_symbols = true;   // non-alphanumerics at token edges

  bool operator==(const Normalization &) const = default;
  static Normalization None() { return {false, false, false, false}; }
};

struct MatchConfig {
  MatchMode matching = MatchMode::kContainment;
  Normalization normalization;

  bool operator==(const MatchConfig &) const = default;

  // Normalized token containment, all normalization on.
  static MatchConfig Containment() { return {}; }
  // Raw string equality.
  static MatchConfig Exact() {
    return {MatchMode::kExact, Normalization::None()};
  }
};

std::string_view MatchModeName(MatchMode mode);

std::string NormalizeValue(std::string_view value, const Normalization &norm);
std::vector<std::string> NormalizedTokens(std::string_view value,
                                          const Normalization &norm);

// Both arguments must be real values (not "None").
bool ValuesMatch(std::string_view predicted, std::string_view gold,
                 const MatchConfig &config);

enum class SlotOutcome {
  kTruePositive,
  kFalsePositive,
  kFalseNegative,
  kFalsePositiveAndNegative,  // both present, values disagree
  kTrueNegative,              // queried, absent on both sides
};

std::string_view SlotOutcomeName(SlotOutcome outcome);

struct ExampleScore {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::map<std::string, SlotOutcome> per_slot;
  bool malformed = false;
};

// "None" values and missing keys both mean "no value". With `queried`, only
// the queried labels are scored.
ExampleScore ScoreExample(const SlotMap &predicted, const SlotMap &gold,
                          const std::optional<std::vector<std::string>> &queried,
                          const MatchConfig &config);

// A generation that could not be parsed: every gold slot is a miss.
ExampleScore ScoreMalformed(
    const SlotMap &gold, const std::optional<std::vector<std::string>> &queried);

struct SlotCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;
};

struct ScoreReport {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::map<std::string, SlotCounts> per_slot;
  int n_examples = 0;
  int n_malformed = 0;
  MatchConfig match_config;
};

// 2pr / (p + r), or 0 when p + r == 0.
double HarmonicF1(double precision, double recall);

// Micro aggregation. A ratio with a zero denominator is 1.0 when
// TP = FP = FN = 0 and 0.0 otherwise.
ScoreReport Aggregate(std::span<const ExampleScore> scores,
                      const MatchConfig &config);

nlohmann::ordered_json ReportToJson(const ScoreReport &report);
// Reads the fields written by ReportToJson; counts, per-slot data and the
// match config are optional. Throws Error(kMalformedLine).
ScoreReport ReportFromJson(const nlohmann::ordered_json &node);

}  // namespace slotforge

#endif  // SLOTFORGE_SLOTMETRICS_H_
