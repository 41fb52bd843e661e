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
#include <thread>

#include <gtest/gtest.h>

#include "test_corpus.h"

namespace slotforge {
namespace {

using Script = std::map<std::string, MockCompletionClient::Entry>;

Call TwoTurnCall() {
  Call call;
  call.call_id = "c1";
  call.domain = Domain::kTelecom;
  Turn a;
  a.index = 0;
  a.speaker = Speaker::kAgent;
  a.audio_ref = "a.wav";
  a.transcript = "What's your phone model?";
  Turn b = a;
  b.index = 1;
  b.speaker = Speaker::kCustomer;
  b.audio_ref = "b.wav";
  b.transcript = "A Pixel 8, bought on March 3rd.";
  b.slots = {{"stale", "x"}};
  call.turns = {a, b};
  return call;
}

size_t Count(const std::vector<AnnotationFinding> &findings,
             AnnotationFindingKind kind) {
  return std::count_if(findings.begin(), findings.end(),
                       [&](const AnnotationFinding &f) { return f.kind == kind; });
}

TEST(AnnotationPromptTest, ContainsTranscriptsAndExclusions) {
  std::string prompt = BuildAnnotationPrompt(TwoTurnCall());
  EXPECT_NE(prompt.find("What's your phone model?"), std::string::npos);
  EXPECT_NE(prompt.find("A Pixel 8, bought on March 3rd."), std::string::npos);
  for (const char *word : {"issues", "solutions", "broader concepts", "advice",
                           "ideas", "entities", "events", "dates", "times",
                           "numerals", "turn by turn"}) {
    EXPECT_NE(prompt.find(word), std::string::npos) << word;
  }
}

TEST(AnnotationPromptTest, NoPrimedLabels) {
  Call call = testing::PaymentCall();
  std::string prompt = BuildAnnotationPrompt(call);
  for (const Turn &t : call.turns) {
    for (const auto &[label, value] : t.slots) {
      EXPECT_EQ(prompt.find(label), std::string::npos) << label;
    }
  }
  EXPECT_NE(prompt.find("no predefined label set"), std::string::npos);
}

TEST(AnnotationPromptTest, EmptyCall) {
  Call call = TwoTurnCall();
  call.turns[1].transcript = "  ";
  try {
    BuildAnnotationPrompt(call);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCall);
  }
  call.turns.clear();
  EXPECT_THROW(BuildAnnotationPrompt(call), Error);
}

TEST(AnnotateCallTest, MockRoundTrip) {
  MockCompletionClient client(
      Script{{"c1", {"0: {}\n1: {'phone_model': 'Pixel 8', 'purchase_date': 'March 3rd'}"}}});
  AnnotatedCall result = AnnotateCall(TwoTurnCall(), client);
  ASSERT_EQ(result.call.turns.size(), 2u);
  EXPECT_TRUE(result.call.turns[0].slots.empty());
  EXPECT_EQ(result.call.turns[1].slots,
            (SlotMap{{"phone_model", "Pixel 8"}, {"purchase_date", "March 3rd"}}));
  EXPECT_TRUE(result.findings.empty());
  EXPECT_EQ(result.attempts, 1);
}

TEST(AnnotateCallTest, UnannotatedTurnsGetEmptyMaps) {
  MockCompletionClient client(Script{{"c1", {"Here you go:\n0: {'phone_model': 'Pixel 8'}"}}});
  AnnotatedCall result = AnnotateCall(TwoTurnCall(), client);
  EXPECT_EQ(result.call.turns[0].slots, (SlotMap{{"phone_model", "Pixel 8"}}));
  EXPECT_TRUE(result.call.turns[1].slots.empty());
  EXPECT_EQ(result.call.turns[1].transcript, TwoTurnCall().turns[1].transcript);
}

TEST(AnnotateCallTest, MalformedTextKeepsRaw) {
  MockCompletionClient client(Script{{"c1", {"I cannot help with that."}}});
  try {
    AnnotateCall(TwoTurnCall(), client);
    FAIL();
  } catch (const UnparseableAnnotationError &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnparseableAnnotation);
    EXPECT_EQ(e.raw(), "I cannot help with that.");
  }
}

TEST(AnnotateCallTest, RetriesWithinBudget) {
  MockCompletionClient client(Script{{"c1", {"1: {'phone_model': 'Pixel 8'}", 2}}});
  std::vector<int64_t> waits;
  RetryPolicy retry;
  retry.max_retries = 3;
  retry.wait = [&](std::chrono::milliseconds ms) { waits.push_back(ms.count()); };
  AnnotatedCall result = AnnotateCall(TwoTurnCall(), client, retry);
  EXPECT_EQ(result.attempts, 3);
  EXPECT_EQ(client.requests("c1"), 3);
  EXPECT_EQ(waits, (std::vector<int64_t>{500, 1000}));
}

TEST(AnnotateCallTest, TransportErrorAfterBudget) {
  MockCompletionClient client(Script{{"c1", {"1: {}", 4}}});
  RetryPolicy retry;
  retry.max_retries = 3;
  try {
    AnnotateCall(TwoTurnCall(), client, retry);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransportError);
  }
  EXPECT_EQ(client.requests("c1"), 4);
}

TEST(AnnotateCallTest, InputTooLarge) {
  MockCompletionClient client(Script{{"c1", {"0: {}"}}}, {.max_input_bytes = 64});
  try {
    AnnotateCall(TwoTurnCall(), client);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInputTooLarge);
  }
  EXPECT_EQ(client.requests(), 0);
}

TEST(AnnotateCallTest, InvalidEntriesDropped) {
  MockCompletionClient client(
      Script{{"c1",
        {"0: {'Issue': 'slow', 'billing_issue': 'late fee', 'x': ''}\n"
         "7: {'a': 'b'}\n1: {'phone_model': 'Pixel 8'}"}}});
  AnnotatedCall result = AnnotateCall(TwoTurnCall(), client);
  EXPECT_EQ(result.call.turns[0].slots,
            (SlotMap{{"billing_issue", "late fee"}}));
  EXPECT_EQ(Count(result.findings, AnnotationFindingKind::kUnknownTurn), 1u);
  EXPECT_EQ(Count(result.findings, AnnotationFindingKind::kDenylistedLabel), 2u);
}

TEST(ValidateAnnotationTest, CapitalizedDenylistedLabel) {
  auto findings = ValidateAnnotation("0: {'Issue': 'slow internet'}", TwoTurnCall());
  ASSERT_EQ(findings.size(), 2u);
  EXPECT_EQ(Count(findings, AnnotationFindingKind::kNonSnakeCaseLabel), 1u);
  EXPECT_EQ(Count(findings, AnnotationFindingKind::kDenylistedLabel), 1u);
}

TEST(ValidateAnnotationTest, UnknownTurnIndex) {
  auto findings = ValidateAnnotation("99: {'a': 'b'}", TwoTurnCall());
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].kind, AnnotationFindingKind::kUnknownTurn);
  EXPECT_EQ(findings[0].turn, 99);
}

TEST(ValidateAnnotationTest, CleanAnnotation) {
  EXPECT_TRUE(ValidateAnnotation("0: {}\n1: {'phone_model': 'Pixel 8'}",
                                 TwoTurnCall())
                  .empty());
}

TEST(ValidateAnnotationTest, EmptyValuesAndPlurals) {
  auto findings = ValidateAnnotation(
      "0: {'a': '', 'b': None}\n1: {'customer_ideas': 'x', 'idea_count': '2', "
      "'ideal_time': 'noon'}",
      TwoTurnCall());
  EXPECT_EQ(Count(findings, AnnotationFindingKind::kEmptyValue), 2u);
  EXPECT_EQ(Count(findings, AnnotationFindingKind::kDenylistedLabel), 2u);
}

TEST(ValidateAnnotationTest, CustomDenylist) {
  std::vector<std::string> deny = {"mood"};
  auto findings =
      ValidateAnnotation("0: {'caller_mood': 'calm', 'issue': 'x'}",
                         TwoTurnCall(), deny);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].label, "caller_mood");
}

// Records the peak number of concurrent Complete calls.
class SlowClient : public CompletionClient {
 public:
  ClientCapabilities capabilities() const override { return {}; }
  std::chrono::milliseconds timeout() const override {
    return std::chrono::milliseconds(100);
  }
  std::string Complete(const CompletionRequest &request) override {
    int now = ++active_;
    int seen = peak_.load();
    while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    --active_;
    if (request.key == "syn-0003") throw TransportError("down");
    return "0: {'k': '" + request.key + "'}";
  }
  int peak() const { return peak_; }

 private:
  std::atomic<int> active_{0};
  std::atomic<int> peak_{0};
};

TEST(AnnotateCorpusTest, BoundedInFlightAndInputOrder) {
  auto calls = testing::SyntheticCorpus({.calls = 12});
  SlowClient client;
  RetryPolicy retry;
  retry.max_retries = 0;
  std::vector<std::string> done;
  auto outcomes = AnnotateCorpus(calls, client, retry, 3, DefaultDenylist(),
                                 [&](const AnnotationOutcome &o) {
                                   done.push_back(o.call_id);
                                 });
  EXPECT_LE(client.peak(), 3);
  ASSERT_EQ(outcomes.size(), calls.size());
  EXPECT_EQ(done.size(), calls.size());
  for (size_t i = 0; i < calls.size(); ++i) {
    EXPECT_EQ(outcomes[i].call_id, calls[i].call_id);
    if (calls[i].call_id == "syn-0003") {
      EXPECT_FALSE(outcomes[i].ok);
      EXPECT_EQ(outcomes[i].error, ErrorCode::kTransportError);
    } else {
      ASSERT_TRUE(outcomes[i].ok);
      EXPECT_EQ(*outcomes[i].result.call.turns[0].slots.Find("k"),
                calls[i].call_id);
      EXPECT_EQ(outcomes[i].result.call.turns.size(), calls[i].turns.size());
    }
  }
}

TEST(MockClientTest, MissingCallFails) {
  MockCompletionClient client(Script{});
  EXPECT_THROW(client.Complete({"nope", "x"}), TransportError);
}

}  // namespace
}  // namespace slotforge
