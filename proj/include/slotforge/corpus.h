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

// Slot-annotated conversational corpora: the JSON Lines interchange format,
// validation, vocabulary extraction and call-level splitting.
//
// One call per line:
//
//   {"call_id": "c1", "domain": "banking", "turns": [{"index": 0,
//    "speaker": "agent", "audio": "clips/c1_t0.wav", "text": "...",
//    "slots": {"payment_amount": "€30"}}]}
//
// Unknown keys on a call or a turn are kept under "meta" and written back
// there on serialization.

#ifndef SLOTFORGE_CORPUS_H_
#define SLOTFORGE_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "slotforge/errors.h"
#include "slotforge/slot_map.h"

namespace slotforge {

enum class Domain { kBanking, kTelecom, kInsurance, kRetail, kOther };
enum class Speaker { kAgent, kCustomer };

std::string_view DomainName(Domain domain);
std::optional<Domain> ParseDomain(std::string_view name);
std::string_view SpeakerName(Speaker speaker);
std::optional<Speaker> ParseSpeaker(std::string_view name);

struct Turn {
  int index = 0;
  Speaker speaker = Speaker::kAgent;
  std::string audio_ref;
  std::string transcript;
  SlotMap slots;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  bool operator==(const Turn &) const = default;
};

struct Call {
  std::string call_id;
  Domain domain = Domain::kOther;
  std::vector<Turn> turns;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  bool operator==(const Call &) const = default;
};

struct SlotVocabulary {
  // label -> number of turns carrying it
  std::map<std::string, int> counts;
  std::map<Domain, std::map<std::string, int>> by_domain;

  bool empty() const { return counts.empty(); }
  bool Contains(std::string_view label) const;
  // Sorted labels, corpus-wide or for one domain.
  std::vector<std::string> Labels() const;
  std::vector<std::string> Labels(Domain domain) const;
};

struct CorpusIssue {
  ErrorCode code;
  size_t line;  // 1-based
  std::string cause;
};

// Raised by LoadCorpus with every problem found in the file.
class CorpusError : public Error {
 public:
  explicit CorpusError(std::vector<CorpusIssue> issues);
  const std::vector<CorpusIssue> &issues() const { return issues_; }

 private:
  std::vector<CorpusIssue> issues_;
};

// Parses and validates one record. Throws Error with kMalformedLine or
// kNonContiguousTurns.
Call ParseCallRecord(std::string_view line);

// Checks the Call/Turn invariants on an in-memory call.
void ValidateCall(const Call &call);

// Reads every line, collecting per-line problems. Blank lines are skipped.
// Throws CorpusError if anything was wrong.
std::vector<Call> ReadCorpus(std::istream &in);
std::vector<Call> LoadCorpus(const std::filesystem::path &path);

// Canonical single-line serialization (no trailing newline).
std::string SerializeCall(const Call &call);
std::string SerializeCorpus(std::span<const Call> calls);
void WriteCorpus(const std::filesystem::path &path, std::span<const Call> calls);

SlotVocabulary BuildVocabulary(std::span<const Call> calls);

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

struct CorpusSplit {
  std::vector<Call> train;
  std::vector<Call> dev;
  std::vector<Call> test;
};

// Whole-call, domain-stratified, seed-deterministic partition.
CorpusSplit SplitCorpus(std::span<const Call> calls, const SplitRatios &ratios,
                        uint64_t seed);

}  // namespace slotforge

#endif  // SLOTFORGE_CORPUS_H_
