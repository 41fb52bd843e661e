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

#include "slotforge/prompt_forge.h"

namespace slotforge {

namespace {

const char *const kPlain[] = {
    "Find all slot values in the current audio.",
    "Extract every slot and its value mentioned in the audio.",
    "Listen to the audio and list the slots it mentions together with their "
    "values.",
    "Identify the entities, dates, times and numbers in this audio clip as "
    "slot-value pairs.",
    "What slot values are present in the current audio?",
    "Perform slot filling on the current audio.",
    "Report every slot label with its value for the utterance in the audio.",
    "Detect the information bearing slots in the audio and give their values.",
    "Fill in the slots expressed in this utterance.",
    "Return the slot labels and values found in the current turn of audio.",
};

const char *const kWithContext[] = {
    "{context}\nUsing the previous turns as context, find all slot values in "
    "the current audio.",
    "{context}\nThe lines above are the preceding turns of the call. Extract "
    "every slot and its value from the current audio.",
    "{context}\nTaking the conversation so far into account, list the slots "
    "mentioned in the audio with their values.",
    "{context}\nGiven this conversation history, identify the entities, "
    "dates, times and numbers in the audio clip as slot-value pairs.",
    "{context}\nWith the earlier turns in mind, what slot values are present "
    "in the current audio?",
    "{context}\nPerform slot filling on the current audio; earlier turns are "
    "shown above for reference.",
    "{context}\nContinue the annotation of this call: report every slot label "
    "with its value for the current utterance.",
    "{context}\nBased on the dialogue context, detect the information bearing "
    "slots in the audio and give their values.",
    "{context}\nConsidering the prior turns, fill in the slots expressed in "
    "this utterance.",
    "{context}\nReturn the slot labels and values found in the current turn "
    "of audio, using the preceding turns as context.",
};

const char *const kWithQuery[] = {
    "Find slot values for {queried_slots} in the current audio.",
    "Extract the values of {queried_slots} from the audio.",
    "Listen to the audio and fill these slots: {queried_slots}.",
    "What are the values of {queried_slots} in this audio clip?",
    "For each of {queried_slots}, give its value in the current audio or "
    "'None' if it is not mentioned.",
    "Perform slot filling on the current audio for the labels "
    "{queried_slots}.",
    "Report the value of every requested slot ({queried_slots}) for the "
    "utterance in the audio.",
    "Which of {queried_slots} are mentioned in the audio, and with what "
    "values?",
    "Fill in {queried_slots} from this utterance.",
    "Return values for the slots {queried_slots} found in the current turn "
    "of audio.",
};

const char *const kWithContextAndQuery[] = {
    "{context}\nUsing the previous turns as context, find slot values for "
    "{queried_slots} in the current audio.",
    "{context}\nThe lines above are the preceding turns of the call. Extract "
    "the values of {queried_slots} from the current audio.",
    "{context}\nTaking the conversation so far into account, fill these "
    "slots from the audio: {queried_slots}.",
    "{context}\nGiven this conversation history, what are the values of "
    "{queried_slots} in the audio clip?",
    "{context}\nWith the earlier turns in mind, give the value of each of "
    "{queried_slots} in the current audio or 'None' if it is not mentioned.",
    "{context}\nPerform slot filling on the current audio for the labels "
    "{queried_slots}; earlier turns are shown above for reference.",
    "{context}\nContinue the annotation of this call: report the value of "
    "every requested slot ({queried_slots}) for the current utterance.",
    "{context}\nBased on the dialogue context, which of {queried_slots} are "
    "mentioned in the audio, and with what values?",
    "{context}\nConsidering the prior turns, fill in {queried_slots} from "
    "this utterance.",
    "{context}\nReturn values for the slots {queried_slots} found in the "
    "current turn of audio, using the preceding turns as context.",
};

template <size_t N>
std::vector<PromptTemplate> MakeBank(PromptCase c, const char *const (&texts)[N],
                                     std::string_view directive) {
  std::vector<PromptTemplate> bank;
  for (const char *text : texts) {
    bank.push_back({c, text, std::string(directive)});
  }
  return bank;
}

}  // namespace

TemplateBanks DefaultTemplateBanks(std::string_view format_directive) {
  TemplateBanks banks;
  banks[PromptCase::kPlain] =
      MakeBank(PromptCase::kPlain, kPlain, format_directive);
  banks[PromptCase::kWithContext] =
      MakeBank(PromptCase::kWithContext, kWithContext, format_directive);
  banks[PromptCase::kWithQuery] =
      MakeBank(PromptCase::kWithQuery, kWithQuery, format_directive);
  banks[PromptCase::kWithContextAndQuery] = MakeBank(
      PromptCase::kWithContextAndQuery, kWithContextAndQuery, format_directive);
  return banks;
}

}  // namespace slotforge
