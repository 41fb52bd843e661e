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

// Whole-call slot annotation through an external text-completion service.
//
// The model sees the entire call and answers with one line per turn:
//
//   <turn index>: {'label': 'value', ...}
//
// Each dict is read with the same lenient parser used on model generations.

#ifndef SLOTFORGE_ANNOTATOR_H_
#define SLOTFORGE_ANNOTATOR_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotforge/corpus.h"
#include "slotforge/errors.h"

namespace slotforge {

// Throws Error(kEmptyCall) when the call has no turns or a turn has an empty
// transcript.
std::string BuildAnnotationPrompt(const Call &call);

struct CompletionRequest {
  std::string key;  // call_id, so scripted clients can answer by call
  std::string instruction;
};

struct ClientCapabilities {
  size_t max_input_bytes = 128 * 1024;
};

// Thrown by clients for timeouts, connection failures and the like.
class TransportError : public Error {
 public:
  explicit TransportError(const std::string &message)
      : Error(ErrorCode::kTransportError, message) {}
};

class CompletionClient {
 public:
  virtual ~CompletionClient() = default;

  virtual ClientCapabilities capabilities() const = 0;
  virtual std::chrono::milliseconds timeout() const = 0;

  // Returns the completion text or throws TransportError. Must be safe to
  // call concurrently and to repeat with the same request.
  virtual std::string Complete(const CompletionRequest &request) = 0;
};

struct RetryPolicy {
  int max_retries = 3;  // attempts after the first one
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
  // Called before every retry with the backoff due; no sleeping by default.
  std::function<void(std::chrono::milliseconds)> wait;

  std::chrono::milliseconds BackoffBefore(int retry) const;  // 1-based
};

// Replays completions from a JSON Lines script:
//   {"call_id": "c1", "completion": "0: {...}", "failures": 2}
// "failures" makes the first N requests for that call throw TransportError.
// A call absent from the script always fails.
class MockCompletionClient : public CompletionClient {
 public:
  struct Entry {
    std::string completion;
    int failures = 0;
  };

  explicit MockCompletionClient(std::map<std::string, Entry> script,
                                ClientCapabilities caps = {});
  static MockCompletionClient FromFile(const std::filesystem::path &path);

  ClientCapabilities capabilities() const override { return caps_; }
  std::chrono::milliseconds timeout() const override {
    return std::chrono::milliseconds(1000);
  }
  std::string Complete(const CompletionRequest &request) override;

  int requests() const;
  int requests(std::string_view key) const;

 private:
  std::map<std::string, Entry> script_;
  ClientCapabilities caps_;
  mutable std::mutex mu_;
  std::map<std::string, int, std::less<>> seen_;
  int total_ = 0;
};

enum class AnnotationFindingKind {
  kUnknownTurn,
  kNonSnakeCaseLabel,
  kEmptyValue,
  kDenylistedLabel,
  kUnparseableLine,
};

std::string_view AnnotationFindingKindName(AnnotationFindingKind kind);

struct AnnotationFinding {
  AnnotationFindingKind kind;
  int turn = -1;
  std::string label;
  std::string detail;
};

inline const std::vector<std::string> &DefaultDenylist() {
  static const std::vector<std::string> kList = {"issue", "solution",
                                                 "concept", "advice", "idea"};
  return kList;
}

// Per-turn slot maps read from a completion, before validation.
struct RawAnnotation {
  std::map<int, SlotMap> turns;
  std::vector<AnnotationFinding> findings;  // unparseable lines
};

// Throws Error(kUnparseableAnnotation) when no turn line can be read.
RawAnnotation ParseAnnotation(std::string_view raw);

// Advisory checks; never throws.
std::vector<AnnotationFinding> ValidateAnnotation(
    std::string_view raw, const Call &call,
    std::span<const std::string> denylist = DefaultDenylist());

class UnparseableAnnotationError : public Error {
 public:
  UnparseableAnnotationError(const std::string &message, std::string raw)
      : Error(ErrorCode::kUnparseableAnnotation, message),
        raw_(std::move(raw)) {}
  const std::string &raw() const { return raw_; }

 private:
  std::string raw_;
};

struct AnnotatedCall {
  Call call;
  std::vector<AnnotationFinding> findings;
  int attempts = 0;
};

// Entries that fail validation (unknown turn, bad label, empty value) are
// dropped; denylisted labels are kept and only reported. Throws
// Error(kInputTooLarge), TransportError once the retry budget is spent, or
// UnparseableAnnotationError.
AnnotatedCall AnnotateCall(const Call &call, CompletionClient &client,
                           const RetryPolicy &retry = {},
                           std::span<const std::string> denylist =
                               DefaultDenylist());

struct AnnotationOutcome {
  std::string call_id;
  bool ok = false;
  AnnotatedCall result;
  ErrorCode error = ErrorCode::kTransportError;
  std::string message;
};

using OutcomeCallback = std::function<void(const AnnotationOutcome &)>;

// Annotates calls with at most `max_in_flight` concurrent requests. Results
// come back in input order whatever the completion order. `on_done` runs once
// per call as it finishes, never concurrently with itself.
std::vector<AnnotationOutcome> AnnotateCorpus(
    std::span<const Call> calls, CompletionClient &client,
    const RetryPolicy &retry = {}, int max_in_flight = 4,
    std::span<const std::string> denylist = DefaultDenylist(),
    const OutcomeCallback &on_done = {});

}  // namespace slotforge

#endif  // SLOTFORGE_ANNOTATOR_H_
