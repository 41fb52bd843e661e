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

// Independent reference implementations used as test oracles.

#ifndef SLOTFORGE_TESTS_SUPPORT_ORACLES_H_
#define SLOTFORGE_TESTS_SUPPORT_ORACLES_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slotforge/adapter_sim.h"
#include "slotforge/rng.h"
#include "slotforge/slot_map.h"
#include "slotforge/slotmetrics.h"

namespace slotforge::testing {

// Outcome table for one example over ASCII words joined by single spaces, so
// normalization reduces to lowercasing. Exact mode compares raw strings;
// containment enumerates every window of the longer token list.
struct OracleScore {
  int tp = 0, fp = 0, fn = 0;
  std::map<std::string, SlotOutcome> per_slot;
};
OracleScore BruteForceScore(const std::map<std::string, std::string> &pred,
                            const std::map<std::string, std::string> &gold,
                            const std::optional<std::vector<std::string>> &queried,
                            bool containment);

// Random small instance over at most `max_slots` labels.
struct MetricsCase {
  std::map<std::string, std::string> pred, gold;
  std::optional<std::vector<std::string>> queried;
};
MetricsCase RandomMetricsCase(SplitMix64 &rng, int max_slots);

SlotMap ToSlotMap(const std::map<std::string, std::string> &m);

// Triple loop forward pass, written without Eigen expressions.
FrameMatrix LoopForward(const FrameMatrix &x, const AdapterParams &p,
                        Activation activation);

}  // namespace slotforge::testing

#endif  // SLOTFORGE_TESTS_SUPPORT_ORACLES_H_
