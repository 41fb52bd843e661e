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

#include "test_corpus.h"

#include <set>

#include "slotforge/rng.h"

namespace slotforge::testing {

namespace {

struct LabelPool {
  const char *label;
  std::vector<std::string> values;
};

const std::vector<LabelPool> &Pools() {
  static const std::vector<LabelPool> kPools = {
      {"payment_amount", {"€30", "$120.50", "45 pounds", "€1,200"}},
      {"payment_frequency", {"monthly", "weekly", "every quarter"}},
      {"account_number", {"4471-22", "AC 99812", "00731"}},
      {"customer_name", {"Patrick", "Siobhán O'Neill", "Mr. Okafor", "Zoë"}},
      {"appointment_date", {"next Tuesday", "March 3rd", "the 14th"}},
      {"appointment_time", {"3:30 pm", "noon", "half past nine"}},
      {"new_limit", {"€2,000", "five thousand"}},
      {"family_members_count", {"four", "2"}},
      {"review_period", {"six months", "a year"}},
      {"phone_model", {"Pixel 8", "iPhone 15 \"Pro\""}},
      {"data_allowance", {"20 GB", "unlimited"}},
      {"plan_name", {"Family Plus", "Basic 'Lite'"}},
      {"policy_number", {"POL-7781", "HX 3309"}},
      {"claim_amount", {"£850", "900 euros"}},
      {"vehicle_model", {"Golf", "Model 3"}},
      {"order_number", {"#55120", "ord\\771"}},
      {"delivery_date", {"Friday", "tomorrow morning"}},
      {"store_location", {"Main Street", "the Cork branch"}},
      {"product_name", {"rice cooker", "Café Deluxe"}},
      {"refund_amount", {"€15", "twenty dollars"}},
  };
  return kPools;
}

const char *const kFillers[] = {
    "Right, so", "Okay, let me check:", "Thanks.", "Just to confirm,",
    "I see, and", "Great,", "Hmm, so", "Alright,"};

}  // namespace

std::vector<Call> SyntheticCorpus(const SyntheticOptions &options) {
  SplitMix64 rng(options.seed);
  const auto &pools = Pools();
  std::vector<Call> calls;
  for (int c = 0; c < options.calls; ++c) {
    Call call;
    char id[32];
    std::snprintf(id, sizeof(id), "syn-%04d", c);
    call.call_id = id;
    call.domain = static_cast<Domain>(c % 5);
    const int turns = static_cast<int>(
        rng.UniformInt(options.min_turns, options.max_turns));
    for (int t = 0; t < turns; ++t) {
      Turn turn;
      turn.index = t;
      turn.speaker = t % 2 == 0 ? Speaker::kAgent : Speaker::kCustomer;
      turn.audio_ref = "clips/" + call.call_id + "_t" + std::to_string(t) +
                       ".wav";
      std::string text = kFillers[rng.UniformInt(0, std::size(kFillers) - 1)];
      const int n_slots =
          static_cast<int>(rng.UniformInt(0, options.max_slots_per_turn));
      std::set<size_t> used;
      for (int s = 0; s < n_slots; ++s) {
        size_t p = rng.UniformInt(0, pools.size() - 1);
        if (!used.insert(p).second) continue;
        const auto &pool = pools[p];
        const std::string &value =
            pool.values[rng.UniformInt(0, pool.values.size() - 1)];
        text += " the " + std::string(pool.label).substr(0, 4) + " is " +
                value + ",";
        turn.slots.Set(pool.label, value);
      }
      text += " anything else?";
      turn.transcript = text;
      call.turns.push_back(std::move(turn));
    }
    calls.push_back(std::move(call));
  }
  return calls;
}

int CountTurns(const std::vector<Call> &calls) {
  int n = 0;
  for (const Call &c : calls) n += static_cast<int>(c.turns.size());
  return n;
}

Call PaymentCall() {
  Call call;
  call.call_id = "pay-001";
  call.domain = Domain::kBanking;
  auto add = [&](Speaker speaker, std::string text, SlotMap slots) {
    Turn t;
    t.index = static_cast<int>(call.turns.size());
    t.speaker = speaker;
    t.audio_ref = "clips/pay-001_t" + std::to_string(t.index) + ".wav";
    t.transcript = std::move(text);
    t.slots = std::move(slots);
    call.turns.push_back(std::move(t));
  };
  add(Speaker::kCustomer,
      "Hi, I'd like to raise my credit limit to €2,000 please.",
      {{"new_limit", "€2,000"}});
  add(Speaker::kAgent,
      "Sure. How many family members are on the account? I see four.",
      {{"family_members_count", "four"}});
  add(Speaker::kCustomer, "Yes, four of us. Can it be reviewed in six months?",
      {{"review_period", "six months"}});
  add(Speaker::kAgent, kPaymentTranscript,
      {{"payment_frequency", "monthly"}, {"payment_amount", "€30"}});
  add(Speaker::kCustomer, "Yes, that's correct.", {});
  return call;
}

std::vector<std::string> PaymentQueried() {
  return {"new_limit", "family_members_count", "review_period",
          "payment_frequency", "payment_amount"};
}

InstructionExample PaymentRegularExample() {
  const Call call = PaymentCall();
  const Turn &turn = call.turns[kPaymentTurn];
  const PromptTemplate tmpl =
      DefaultTemplateBanks().at(PromptCase::kWithQuery).front();
  InstructionExample ex;
  ex.id = ExampleId(call.call_id, turn.index, ExampleMode::kRegular);
  ex.audio_ref = turn.audio_ref;
  ex.queried_slots = PaymentQueried();
  ex.instruction = RenderPrompt(tmpl, ex.queried_slots, std::nullopt);
  ex.mode = ExampleMode::kRegular;
  ex.target = FormatSlotDict(BuildTargetSlots(turn.slots, ex.queried_slots));
  ex.meta.call_id = call.call_id;
  ex.meta.turn = turn.index;
  ex.meta.context_size = 0;
  ex.meta.distractors = 3;
  ex.meta.template_index = 0;
  ex.meta.prompt_case = PromptCase::kWithQuery;
  return ex;
}

std::string PaymentReasoningGeneration() {
  return std::string("<thinking>\nI hear the utterance in the audio clip is \n"
                     "``` ") +
         kPaymentTranscript +
         " ```\nI see that the information bearing mentions in the utterance "
         "are monthly | €30.\nThe labels queried for are payment_frequency, "
         "payment_amount, new_limit, family_members_count, review_period\n"
         "Based on the semantics of payment_frequency, payment_amount slots, "
         "the mentions in the utterance can be assigned to them. The others "
         "are all 'None'\n<\\thinking>\n <response>\n" +
         kPaymentRegularTarget + "\n <\\response>";
}

std::string FixturePath(const std::string &name) {
  return std::string(SLOTFORGE_FIXTURE_DIR) + "/" + name;
}

}  // namespace slotforge::testing
