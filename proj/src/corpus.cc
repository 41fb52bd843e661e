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

#include "slotforge/corpus.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "slotforge/io.h"
#include "slotforge/rng.h"

namespace slotforge {

using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Domain, std::string_view>, 5> kDomains = {{
    {Domain::kBanking, "banking"},
    {Domain::kTelecom, "telecom"},
    {Domain::kInsurance, "insurance"},
    {Domain::kRetail, "retail"},
    {Domain::kOther, "other"},
}};

[[noreturn]] void Malformed(const std::string &cause) {
  throw Error(ErrorCode::kMalformedLine, cause);
}

const ordered_json &Require(const ordered_json &object, const char *key,
                            const std::string &where) {
  auto it = object.find(key);
  if (it == object.end()) Malformed(where + "missing \"" + key + "\"");
  return *it;
}

std::string RequireString(const ordered_json &object, const char *key,
                          const std::string &where) {
  const ordered_json &value = Require(object, key, where);
  if (!value.is_string()) Malformed(where + "\"" + key + "\" must be a string");
  return value.get<std::string>();
}

void AbsorbUnknown(const ordered_json &object,
                   std::initializer_list<std::string_view> known,
                   ordered_json *meta, const std::string &where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    const std::string &key = it.key();
    if (std::find(known.begin(), known.end(), key) != known.end()) continue;
    if (key == "meta") {
      if (!it->is_object()) Malformed(where + "\"meta\" must be an object");
      for (auto m = it->begin(); m != it->end(); ++m) (*meta)[m.key()] = *m;
    } else {
      (*meta)[key] = *it;
    }
  }
}

void CheckSlot(std::string_view label, std::string_view value,
               const std::string &where) {
  if (!IsSnakeCaseLabel(label)) {
    Malformed(where + "slot label '" + std::string(label) +
              "' is not snake_case");
  }
  if (value.empty()) {
    Malformed(where + "slot '" + std::string(label) + "' has an empty value");
  }
  if (value == kNoneValue) {
    Malformed(where + "slot '" + std::string(label) +
              "' is 'None'; absent slots must be omitted");
  }
}

Turn ParseTurn(const ordered_json &node, size_t position) {
  std::string where = "turns[" + std::to_string(position) + "]: ";
  if (!node.is_object()) Malformed(where + "turn must be an object");

  Turn turn;
  const ordered_json &index = Require(node, "index", where);
  if (!index.is_number_integer() || index.get<int64_t>() < 0) {
    Malformed(where + "\"index\" must be a non-negative integer");
  }
  turn.index = index.get<int>();

  std::string speaker = RequireString(node, "speaker", where);
  auto parsed_speaker = ParseSpeaker(speaker);
  if (!parsed_speaker) Malformed(where + "unknown speaker '" + speaker + "'");
  turn.speaker = *parsed_speaker;

  turn.audio_ref = RequireString(node, "audio", where);
  turn.transcript = RequireString(node, "text", where);

  if (auto it = node.find("slots"); it != node.end()) {
    if (!it->is_object()) Malformed(where + "\"slots\" must be an object");
    for (auto s = it->begin(); s != it->end(); ++s) {
      if (!s->is_string()) {
        Malformed(where + "slot '" + s.key() + "' value must be a string");
      }
      std::string value = s->get<std::string>();
      CheckSlot(s.key(), value, where);
      turn.slots.Set(s.key(), value);
    }
  }
  AbsorbUnknown(node, {"index", "speaker", "audio", "text", "slots"},
                &turn.meta, where);
  return turn;
}

void CheckTurnIndices(const Call &call) {
  for (size_t i = 0; i < call.turns.size(); ++i) {
    if (call.turns[i].index != static_cast<int>(i)) {
      throw Error(ErrorCode::kNonContiguousTurns,
                  "call '" + call.call_id + "': turn at position " +
                      std::to_string(i) + " has index " +
                      std::to_string(call.turns[i].index));
    }
  }
}

std::string SummarizeIssues(const std::vector<CorpusIssue> &issues) {
  std::ostringstream out;
  out << issues.size() << " problem(s) in corpus";
  for (const auto &issue : issues) {
    out << "\n  line " << issue.line << ": " << issue.cause;
  }
  return out.str();
}

}  // namespace

std::string_view DomainName(Domain domain) {
  for (const auto &[value, name] : kDomains) {
    if (value == domain) return name;
  }
  return "other";
}

std::optional<Domain> ParseDomain(std::string_view name) {
  for (const auto &[value, known] : kDomains) {
    if (known == name) return value;
  }
  return std::nullopt;
}

std::string_view SpeakerName(Speaker speaker) {
  return speaker == Speaker::kAgent ? "agent" : "customer";
}

std::optional<Speaker> ParseSpeaker(std::string_view name) {
  if (name == "agent") return Speaker::kAgent;
  if (name == "customer") return Speaker::kCustomer;
  return std::nullopt;
}

bool SlotVocabulary::Contains(std::string_view label) const {
  return counts.find(std::string(label)) != counts.end();
}

std::vector<std::string> SlotVocabulary::Labels() const {
  std::vector<std::string> labels;
  for (const auto &[label, count] : counts) labels.push_back(label);
  return labels;
}

std::vector<std::string> SlotVocabulary::Labels(Domain domain) const {
  std::vector<std::string> labels;
  auto it = by_domain.find(domain);
  if (it == by_domain.end()) return labels;
  for (const auto &[label, count] : it->second) labels.push_back(label);
  return labels;
}

CorpusError::CorpusError(std::vector<CorpusIssue> issues)
    : Error(issues.empty() ? ErrorCode::kMalformedLine : issues.front().code,
            SummarizeIssues(issues)),
      issues_(std::move(issues)) {}

Call ParseCallRecord(std::string_view line) {
  ordered_json node;
  try {
    node = ordered_json::parse(line);
  } catch (const nlohmann::json::exception &e) {
    Malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!node.is_object()) Malformed("record must be a JSON object");

  Call call;
  call.call_id = RequireString(node, "call_id", "");
  if (call.call_id.empty()) Malformed("\"call_id\" must be non-empty");

  std::string domain = RequireString(node, "domain", "");
  auto parsed_domain = ParseDomain(domain);
  if (!parsed_domain) Malformed("unknown domain '" + domain + "'");
  call.domain = *parsed_domain;

  const ordered_json &turns = Require(node, "turns", "");
  if (!turns.is_array()) Malformed("\"turns\" must be an array");
  for (size_t i = 0; i < turns.size(); ++i) {
    call.turns.push_back(ParseTurn(turns[i], i));
  }
  AbsorbUnknown(node, {"call_id", "domain", "turns"}, &call.meta, "");
  CheckTurnIndices(call);
  return call;
}

void ValidateCall(const Call &call) {
  if (call.call_id.empty()) Malformed("\"call_id\" must be non-empty");
  for (const Turn &turn : call.turns) {
    std::string where = "turn " + std::to_string(turn.index) + ": ";
    for (const auto &[label, value] : turn.slots) CheckSlot(label, value, where);
  }
  CheckTurnIndices(call);
}

std::vector<Call> ReadCorpus(std::istream &in) {
  std::vector<Call> calls;
  std::vector<CorpusIssue> issues;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      Call call = ParseCallRecord(line);
      if (!seen.insert(call.call_id).second) {
        issues.push_back({ErrorCode::kDuplicateCallId, line_number,
                          "duplicate call_id '" + call.call_id + "'"});
        continue;
      }
      calls.push_back(std::move(call));
    } catch (const Error &e) {
      issues.push_back({e.code(), line_number, e.what()});
    }
  }
  if (!issues.empty()) throw CorpusError(std::move(issues));
  return calls;
}

std::vector<Call> LoadCorpus(const std::filesystem::path &path) {
  std::istringstream in(ReadFile(path));
  return ReadCorpus(in);
}

std::string SerializeCall(const Call &call) {
  ordered_json node;
  node["call_id"] = call.call_id;
  node["domain"] = DomainName(call.domain);
  ordered_json turns = ordered_json::array();
  for (const Turn &turn : call.turns) {
    ordered_json t;
    t["index"] = turn.index;
    t["speaker"] = SpeakerName(turn.speaker);
    t["audio"] = turn.audio_ref;
    t["text"] = turn.transcript;
    ordered_json slots = ordered_json::object();
    for (const auto &[label, value] : turn.slots) slots[label] = value;
    t["slots"] = std::move(slots);
    if (!turn.meta.empty()) t["meta"] = turn.meta;
    turns.push_back(std::move(t));
  }
  node["turns"] = std::move(turns);
  if (!call.meta.empty()) node["meta"] = call.meta;
  return node.dump();
}

std::string SerializeCorpus(std::span<const Call> calls) {
  std::string out;
  for (const Call &call : calls) {
    out += SerializeCall(call);
    out += '\n';
  }
  return out;
}

void WriteCorpus(const std::filesystem::path &path,
                 std::span<const Call> calls) {
  WriteFileAtomic(path, SerializeCorpus(calls));
}

SlotVocabulary BuildVocabulary(std::span<const Call> calls) {
  SlotVocabulary vocabulary;
  for (const Call &call : calls) {
    auto &domain_counts = vocabulary.by_domain[call.domain];
    for (const Turn &turn : call.turns) {
      for (const auto &[label, value] : turn.slots) {
        ++vocabulary.counts[label];
        ++domain_counts[label];
      }
    }
  }
  for (auto it = vocabulary.by_domain.begin();
       it != vocabulary.by_domain.end();) {
    it = it->second.empty() ? vocabulary.by_domain.erase(it) : std::next(it);
  }
  return vocabulary;
}

CorpusSplit SplitCorpus(std::span<const Call> calls, const SplitRatios &ratios,
                        uint64_t seed) {
  const std::array<double, 3> r = {ratios.train, ratios.dev, ratios.test};
  for (double x : r) {
    if (!std::isfinite(x) || x <= 0.0) {
      throw Error(ErrorCode::kInvalidRatios, "ratios must be positive");
    }
  }
  if (std::fabs(r[0] + r[1] + r[2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidRatios, "ratios must sum to 1");
  }

  // Per-domain shuffled order.
  std::map<Domain, std::vector<size_t>> groups;
  for (size_t i = 0; i < calls.size(); ++i) groups[calls[i].domain].push_back(i);
  struct Slot {
    size_t call;
    size_t rank;   // position inside its domain
    size_t size;   // domain size
    Domain domain;
  };
  std::vector<Slot> order;
  for (auto &[domain, members] : groups) {
    std::sort(members.begin(), members.end(), [&](size_t a, size_t b) {
      return calls[a].call_id < calls[b].call_id;
    });
    SplitMix64 rng(DeriveSeed(seed, DomainName(domain), 0));
    rng.Shuffle(std::span<size_t>(members));
    for (size_t p = 0; p < members.size(); ++p) {
      order.push_back({members[p], p, members.size(), domain});
    }
  }
  // Interleave domains proportionally: key (rank + 1/2) / size, compared
  // exactly in integers, so any prefix of `order` is stratified.
  std::sort(order.begin(), order.end(), [](const Slot &a, const Slot &b) {
    uint64_t lhs = (2 * a.rank + 1) * b.size;
    uint64_t rhs = (2 * b.rank + 1) * a.size;
    if (lhs != rhs) return lhs < rhs;
    return a.domain < b.domain;
  });

  // Largest-remainder allocation of the global counts.
  const size_t n = calls.size();
  std::array<size_t, 3> counts{};
  std::array<double, 3> remainders{};
  size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    double quota = static_cast<double>(n) * r[i];
    counts[i] = static_cast<size_t>(std::floor(quota + 1e-9));
    remainders[i] = quota - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  while (assigned < n) {
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (remainders[i] > remainders[best]) best = i;
    }
    ++counts[best];
    remainders[best] = -1.0;
    ++assigned;
  }
  while (assigned > n) {  // only reachable through the 1e-9 nudge
    for (int i = 2; i >= 0 && assigned > n; --i) {
      if (counts[i] > 0) {
        --counts[i];
        --assigned;
      }
    }
  }

  std::vector<int> bucket(n, 0);
  for (size_t pos = 0; pos < order.size(); ++pos) {
    bucket[order[pos].call] =
        pos < counts[0] ? 0 : (pos < counts[0] + counts[1] ? 1 : 2);
  }
  CorpusSplit split;
  for (size_t i = 0; i < n; ++i) {
    std::vector<Call> &target =
        bucket[i] == 0 ? split.train : (bucket[i] == 1 ? split.dev : split.test);
    target.push_back(calls[i]);
  }
  return split;
}

}  // namespace slotforge
