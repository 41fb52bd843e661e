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

#include "slotforge/reasoning_forge.h"

#include <gtest/gtest.h>

#include "slotforge/dataset.h"
#include "slotforge/genparse.h"
#include "test_corpus.h"

namespace slotforge {
namespace {

using testing::PaymentCall;
using testing::PaymentRegularExample;
using testing::kPaymentTurn;

TEST(TraceTest, PaymentTrace) {
  Call call = PaymentCall();
  ReasoningTrace trace =
      BuildTrace(call.turns[kPaymentTurn], testing::PaymentQueried());
  EXPECT_EQ(trace.mentions, (std::vector<std::string>{"monthly", "€30"}));
  EXPECT_EQ(trace.assigned_labels,
            (std::vector<std::string>{"payment_frequency", "payment_amount"}));
  std::string text = RenderTrace(trace);
  EXPECT_EQ(text,
            std::string("I hear the utterance in the audio clip is\n``` ") +
                testing::kPaymentTranscript +
                " ```\n"
                "I see that the information bearing mentions in the utterance "
                "are monthly | €30.\n"
                "The labels queried for are payment_frequency, payment_amount, "
                "new_limit, family_members_count, review_period\n"
                "Based on the semantics of payment_frequency, payment_amount "
                "slots, the mentions in the utterance can be assigned to them. "
                "The others are all 'None'");
}

TEST(TraceTest, NoMentions) {
  Turn turn;
  turn.transcript = "Yes, that's correct.";
  ReasoningTrace trace =
      BuildTrace(turn, std::vector<std::string>{"a_b", "c_d"});
  EXPECT_TRUE(trace.mentions.empty());
  std::string text = RenderTrace(trace);
  EXPECT_NE(text.find("I see that there are no information bearing mentions "
                      "in the utterance."),
            std::string::npos);
  EXPECT_NE(text.find("None of the queried labels can be assigned a mention, "
                      "so they are all 'None'"),
            std::string::npos);
}

TEST(TraceTest, AllAssignedOmitsOthersClause) {
  Turn turn;
  turn.transcript = "Pay €30 monthly.";
  turn.slots = {{"payment_amount", "€30"}, {"payment_frequency", "monthly"}};
  ReasoningTrace trace = BuildTrace(
      turn, std::vector<std::string>{"payment_frequency", "payment_amount"});
  std::string text = RenderTrace(trace);
  EXPECT_EQ(text.find("The others"), std::string::npos);
  EXPECT_NE(text.find("mentions in the utterance are €30 | monthly."),
            std::string::npos);
}

TEST(TraceTest, UnqueriedWording) {
  Turn turn;
  turn.transcript = "Okay.";
  std::string text = RenderTrace(BuildTrace(turn, std::nullopt));
  EXPECT_NE(text.find("No specific labels are queried for."), std::string::npos);
  EXPECT_NE(text.find("There are no slot values to assign."), std::string::npos);
}

TEST(TraceTest, MentionsDeduplicatedAndOrderedByPosition) {
  Turn turn;
  turn.transcript = "two adults, two kids, starting Monday";
  turn.slots = {{"start_day", "Monday"}, {"adults", "two"}, {"kids", "two"},
                {"note", "not spoken"}};
  ReasoningTrace trace = BuildTrace(turn, std::nullopt);
  EXPECT_EQ(trace.mentions,
            (std::vector<std::string>{"two", "Monday", "not spoken"}));
}

TEST(ForgeReasoningTest, PaymentResponseBlockIsRegularTarget) {
  Call call = PaymentCall();
  InstructionExample regular = PaymentRegularExample();
  InstructionExample reasoning =
      ForgeReasoningExample(regular, call.turns[kPaymentTurn]);
  EXPECT_EQ(reasoning.mode, ExampleMode::kReasoning);
  EXPECT_EQ(reasoning.instruction, regular.instruction);
  EXPECT_EQ(reasoning.audio_ref, regular.audio_ref);
  EXPECT_TRUE(reasoning.target.starts_with("<thinking>\nI hear the utterance"));
  EXPECT_TRUE(reasoning.target.ends_with(
      std::string("</thinking>\n<response>\n") + testing::kPaymentRegularTarget +
      "\n</response>"));
  auto response = ExtractTagged(reasoning.target, {}, TagName::kResponse, nullptr);
  ASSERT_TRUE(response);
  EXPECT_EQ(response->inner, "\n" + std::string(testing::kPaymentRegularTarget) + "\n");
}

TEST(ForgeReasoningTest, EmptyGoldUnqueried) {
  Call call = PaymentCall();
  InstructionExample regular = PaymentRegularExample();
  const Turn &turn = call.turns[4];
  regular.queried_slots.reset();
  regular.meta.turn = 4;
  regular.audio_ref = turn.audio_ref;
  regular.target = "{}";
  InstructionExample r = ForgeReasoningExample(regular, turn);
  EXPECT_NE(r.target.find("no information bearing mentions"), std::string::npos);
  EXPECT_TRUE(r.target.ends_with("<response>\n{}\n</response>"));
}

TEST(ForgeReasoningTest, SourceTurnMismatch) {
  Call call = PaymentCall();
  InstructionExample regular = PaymentRegularExample();
  try {
    ForgeReasoningExample(regular, call.turns[0]);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kSourceTurnMismatch);
  }
  Turn altered = call.turns[kPaymentTurn];
  altered.slots.Set("payment_amount", "€40");
  EXPECT_THROW(ForgeReasoningExample(regular, altered), Error);
}

TEST(ForgeReasoningTest, ParsedSlotsMatchRegular) {
  auto calls = testing::SyntheticCorpus({.calls = 20});
  ForgeConfig config;
  auto regular = ForgeDataset(calls, config, ForgeKind::kRegular);
  auto reasoning = ForgeDataset(calls, config, ForgeKind::kReasoning);
  ASSERT_EQ(regular.size(), reasoning.size());
  for (size_t i = 0; i < regular.size(); ++i) {
    ParsedGeneration a = ParseGeneration(regular[i].target);
    ParsedGeneration b = ParseGeneration(reasoning[i].target);
    ASSERT_EQ(a.mode, GenerationMode::kRegular);
    ASSERT_EQ(b.mode, GenerationMode::kReasoning);
    EXPECT_TRUE(a.diagnostics.empty());
    EXPECT_TRUE(b.diagnostics.empty()) << reasoning[i].target;
    EXPECT_EQ(a.slot_values, b.slot_values);
    // Tag balance: one think block, one response block, nothing after.
    const std::string &t = reasoning[i].target;
    EXPECT_EQ(t.find("<thinking>"), t.rfind("<thinking>"));
    EXPECT_EQ(t.find("<response>"), t.rfind("<response>"));
    EXPECT_TRUE(t.ends_with("</response>"));
  }
}

TEST(ForgeReasoningTest, MentionsAreGoldValues) {
  auto calls = testing::SyntheticCorpus({.calls = 20});
  for (const Call &call : calls) {
    for (const Turn &turn : call.turns) {
      ReasoningTrace trace = BuildTrace(turn, std::nullopt);
      for (const std::string &m : trace.mentions) {
        bool found = false;
        for (const auto &[label, value] : turn.slots) found |= value == m;
        EXPECT_TRUE(found) << m;
      }
    }
  }
}

class HybridTest : public ::testing::Test {
 protected:
  void SetUp() override {
    calls_ = testing::SyntheticCorpus({.calls = 10, .min_turns = 10, .max_turns = 10});
    regular_ = ForgeDataset(calls_, config_, ForgeKind::kRegular);
    reasoning_ = ForgeDataset(calls_, config_, ForgeKind::kReasoning);
  }
  std::vector<Call> calls_;
  ForgeConfig config_;
  std::vector<InstructionExample> regular_, reasoning_;
};

TEST_F(HybridTest, CardinalityAndTags) {
  ASSERT_EQ(regular_.size(), 100u);
  auto hybrid = ForgeHybridDataset(regular_, reasoning_, 5);
  ASSERT_EQ(hybrid.size(), 200u);
  int think = 0, no_think = 0;
  for (const auto &ex : hybrid) {
    ASSERT_TRUE(ex.control_tag);
    if (*ex.control_tag == ControlTag::kThink) {
      ++think;
      EXPECT_TRUE(ex.instruction.ends_with(" \\think"));
      EXPECT_NE(ex.target.find("<thinking>"), std::string::npos);
      EXPECT_EQ(ex.mode, ExampleMode::kReasoning);
    } else {
      ++no_think;
      EXPECT_TRUE(ex.instruction.ends_with(" \\no_think"));
      EXPECT_EQ(ex.target.find("<thinking>"), std::string::npos);
    }
  }
  EXPECT_EQ(think, 100);
  EXPECT_EQ(no_think, 100);
}

TEST_F(HybridTest, DeterministicAndInterleaved) {
  auto a = ForgeHybridDataset(regular_, reasoning_, 5);
  auto b = ForgeHybridDataset(regular_, reasoning_, 5);
  EXPECT_EQ(a, b);
  int switches = 0;
  for (size_t i = 1; i < a.size(); ++i) switches += a[i].mode != a[i - 1].mode;
  EXPECT_GT(switches, 50);
}

TEST_F(HybridTest, MismatchedOrigins) {
  auto fewer = reasoning_;
  fewer.pop_back();
  try {
    ForgeHybridDataset(regular_, fewer, 5);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMismatchedOrigins);
  }
  ForgeConfig other = config_;
  other.master_seed = 99;
  auto foreign = ForgeDataset(calls_, other, ForgeKind::kReasoning);
  EXPECT_THROW(ForgeHybridDataset(regular_, foreign, 5), Error);
}

}  // namespace
}  // namespace slotforge
