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

#include "slotforge/annotator.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "slotforge/genparse.h"
#include "slotforge/io.h"

namespace slotforge {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::vector<std::string> LabelTokens(std::string_view label) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::optional<std::string> DenylistHit(std::string_view label,
                                       std::span<const std::string> denylist) {
  for (const std::string &token : LabelTokens(label)) {
    for (const std::string &entry : denylist) {
      std::string word = Lower(entry);
      if (token == word || token == word + "s" || token == word + "es") {
        return entry;
      }
    }
  }
  return std::nullopt;
}

// Splits "  12: {...}" (optionally "turn 12: ...") into index and dict text.
bool SplitTurnLine(std::string_view line, int *index, std::string_view *dict) {
  size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
    ++i;
  }
  if (line.size() - i >= 4 && Lower(line.substr(i, 4)) == "turn") {
    i += 4;
    while (i < line.size() &&
           std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
  }
  size_t digits = i;
  while (digits < line.size() &&
         std::isdigit(static_cast<unsigned char>(line[digits]))) {
    ++digits;
  }
  if (digits == i || digits - i > 9) return false;
  size_t colon = digits;
  while (colon < line.size() &&
         std::isspace(static_cast<unsigned char>(line[colon]))) {
    ++colon;
  }
  if (colon >= line.size() || line[colon] != ':') return false;
  *index = std::stoi(std::string(line.substr(i, digits - i)));
  *dict = line.substr(colon + 1);
  return true;
}

bool TurnExists(const Call &call, int index) {
  return index >= 0 && index < static_cast<int>(call.turns.size());
}

}  // namespace

std::string BuildAnnotationPrompt(const Call &call) {
  if (call.turns.empty()) {
    throw Error(ErrorCode::kEmptyCall, "call " + call.call_id + " has no turns");
  }
  for (const Turn &turn : call.turns) {
    if (IsBlank(turn.transcript)) {
      throw Error(ErrorCode::kEmptyCall,
                  "call " + call.call_id + " turn " +
                      std::to_string(turn.index) + " has an empty transcript");
    }
  }
  std::ostringstream out;
  out << "Below is a complete call center conversation between an agent and a "
         "customer, one turn per line, each prefixed with its turn index and "
         "speaker.\n\n";
  for (const Turn &turn : call.turns) {
    out << turn.index << " [" << SpeakerName(turn.speaker)
        << "]: " << turn.transcript << "\n";
  }
  out << "\nDo slot filling turn by turn. For every turn, identify the "
         "mentions that reflect real world entities, events, dates, times and "
         "numerals (amounts, counts, durations, identifiers), and give each "
         "mention a short descriptive slot label of your own choosing in "
         "snake_case. There is no predefined label set.\n"
         "Do not annotate abstract notions: leave out issues, solutions, "
         "broader concepts, advice and ideas.\n"
         "Copy each value exactly as it is spoken in the turn.\n\n"
         "Answer with exactly one line per turn, in turn order, formatted as\n"
         "<turn index>: {'slot_label': 'value', ...}\n"
         "Use {} for a turn without such mentions. Write nothing else.\n";
  return out.str();
}

std::chrono::milliseconds RetryPolicy::BackoffBefore(int retry) const {
  double ms = static_cast<double>(initial_backoff.count());
  for (int i = 1; i < retry; ++i) ms *= backoff_multiplier;
  return std::chrono::milliseconds(static_cast<int64_t>(ms));
}

MockCompletionClient::MockCompletionClient(std::map<std::string, Entry> script,
                                           ClientCapabilities caps)
    : script_(std::move(script)), caps_(caps) {}

MockCompletionClient MockCompletionClient::FromFile(
    const std::filesystem::path &path) {
  std::istringstream in(ReadFile(path));
  std::map<std::string, Entry> script;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (IsBlank(line)) continue;
    try {
      nlohmann::json node = nlohmann::json::parse(line);
      Entry entry;
      entry.completion = node.at("completion").get<std::string>();
      entry.failures = node.value("failures", 0);
      script[node.at("call_id").get<std::string>()] = std::move(entry);
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kMalformedLine, path.string() + ":" +
                                                 std::to_string(number) + ": " +
                                                 e.what());
    }
  }
  return MockCompletionClient(std::move(script));
}

std::string MockCompletionClient::Complete(const CompletionRequest &request) {
  int attempt;
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++total_;
    attempt = ++seen_[request.key];
  }
  auto it = script_.find(request.key);
  if (it == script_.end()) {
    throw TransportError("no scripted completion for " + request.key);
  }
  if (attempt <= it->second.failures) {
    throw TransportError("scripted timeout " + std::to_string(attempt) +
                         " for " + request.key);
  }
  return it->second.completion;
}

int MockCompletionClient::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return total_;
}

int MockCompletionClient::requests(std::string_view key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = seen_.find(key);
  return it == seen_.end() ? 0 : it->second;
}

std::string_view AnnotationFindingKindName(AnnotationFindingKind kind) {
  switch (kind) {
    case AnnotationFindingKind::kUnknownTurn: return "unknown_turn";
    case AnnotationFindingKind::kNonSnakeCaseLabel: return "non_snake_case_label";
    case AnnotationFindingKind::kEmptyValue: return "empty_value";
    case AnnotationFindingKind::kDenylistedLabel: return "denylisted_label";
    case AnnotationFindingKind::kUnparseableLine: return "unparseable_line";
  }
  return "unknown";
}

RawAnnotation ParseAnnotation(std::string_view raw) {
  RawAnnotation result;
  size_t start = 0;
  while (start <= raw.size()) {
    size_t end = raw.find('\n', start);
    if (end == std::string_view::npos) end = raw.size();
    std::string_view line = raw.substr(start, end - start);
    start = end + 1;
    int index = 0;
    std::string_view dict;
    if (!SplitTurnLine(line, &index, &dict)) continue;
    try {
      SlotDictParse parsed = ParseSlotDict(dict);
      SlotMap &slots = result.turns[index];
      for (const auto &[label, value] : parsed.slots) slots.Set(label, value);
    } catch (const Error &e) {
      result.findings.push_back({AnnotationFindingKind::kUnparseableLine, index,
                                 "", e.what()});
    }
  }
  if (result.turns.empty()) {
    throw UnparseableAnnotationError("no per-turn slot lines found",
                                     std::string(raw));
  }
  return result;
}

namespace {

// Shared by ValidateAnnotation and AnnotateCall; returns the accepted slots.
std::map<int, SlotMap> CheckAnnotation(const RawAnnotation &parsed,
                                       const Call &call,
                                       std::span<const std::string> denylist,
                                       std::vector<AnnotationFinding> *out) {
  std::map<int, SlotMap> accepted;
  for (const auto &[index, slots] : parsed.turns) {
    if (!TurnExists(call, index)) {
      out->push_back({AnnotationFindingKind::kUnknownTurn, index, "",
                      "call has " + std::to_string(call.turns.size()) +
                          " turns"});
      continue;
    }
    for (const auto &[label, value] : slots) {
      bool keep = true;
      if (!IsSnakeCaseLabel(label)) {
        out->push_back({AnnotationFindingKind::kNonSnakeCaseLabel, index, label,
                        "labels must match [a-z][a-z0-9_]*"});
        keep = false;
      }
      if (IsNoneValue(value) || IsBlank(value)) {
        out->push_back({AnnotationFindingKind::kEmptyValue, index, label,
                        value.empty() ? "empty" : "'" + value + "'"});
        keep = false;
      }
      if (auto hit = DenylistHit(label, denylist)) {
        out->push_back({AnnotationFindingKind::kDenylistedLabel, index, label,
                        "abstract notion: " + *hit});
      }
      if (keep) accepted[index].Set(label, value);
    }
  }
  return accepted;
}

}  // namespace

std::vector<AnnotationFinding> ValidateAnnotation(
    std::string_view raw, const Call &call,
    std::span<const std::string> denylist) {
  RawAnnotation parsed;
  try {
    parsed = ParseAnnotation(raw);
  } catch (const Error &e) {
    return {{AnnotationFindingKind::kUnparseableLine, -1, "", e.what()}};
  }
  std::vector<AnnotationFinding> findings = parsed.findings;
  CheckAnnotation(parsed, call, denylist, &findings);
  return findings;
}

AnnotatedCall AnnotateCall(const Call &call, CompletionClient &client,
                           const RetryPolicy &retry,
                           std::span<const std::string> denylist) {
  CompletionRequest request{call.call_id, BuildAnnotationPrompt(call)};
  const size_t limit = client.capabilities().max_input_bytes;
  if (request.instruction.size() > limit) {
    throw Error(ErrorCode::kInputTooLarge,
                "prompt for " + call.call_id + " is " +
                    std::to_string(request.instruction.size()) +
                    " bytes, client accepts " + std::to_string(limit));
  }

  AnnotatedCall result;
  std::string raw;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 0 && retry.wait) retry.wait(retry.BackoffBefore(attempt));
    ++result.attempts;
    try {
      raw = client.Complete(request);
      break;
    } catch (const TransportError &e) {
      if (attempt >= retry.max_retries) {
        throw TransportError(std::string(e.what()) + " (gave up after " +
                             std::to_string(result.attempts) + " attempts)");
      }
    }
  }

  RawAnnotation parsed = ParseAnnotation(raw);
  result.findings = parsed.findings;
  std::map<int, SlotMap> accepted =
      CheckAnnotation(parsed, call, denylist, &result.findings);

  result.call = call;
  for (Turn &turn : result.call.turns) {
    auto it = accepted.find(turn.index);
    turn.slots = it == accepted.end() ? SlotMap() : it->second;
  }
  ValidateCall(result.call);
  return result;
}

std::vector<AnnotationOutcome> AnnotateCorpus(
    std::span<const Call> calls, CompletionClient &client,
    const RetryPolicy &retry, int max_in_flight,
    std::span<const std::string> denylist, const OutcomeCallback &on_done) {
  if (max_in_flight < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_in_flight must be >= 1");
  }
  std::vector<AnnotationOutcome> outcomes(calls.size());
  std::atomic<size_t> next{0};
  std::mutex done_mu;
  auto worker = [&] {
    for (size_t i = next++; i < calls.size(); i = next++) {
      AnnotationOutcome &outcome = outcomes[i];
      outcome.call_id = calls[i].call_id;
      try {
        outcome.result = AnnotateCall(calls[i], client, retry, denylist);
        outcome.ok = true;
      } catch (const Error &e) {
        outcome.error = e.code();
        outcome.message = e.what();
      }
      if (on_done) {
        std::lock_guard<std::mutex> lock(done_mu);
        on_done(outcome);
      }
    }
  };
  const size_t n = std::min(calls.size(), static_cast<size_t>(max_in_flight));
  std::vector<std::thread> threads;
  for (size_t t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread &t : threads) t.join();
  return outcomes;
}

}  // namespace slotforge
