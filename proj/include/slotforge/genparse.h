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

// Parsing of raw model generations into slot maps.
//
// A reasoning generation looks like
//
//   <thinking>
//   ...trace...
//   </thinking>
//   <response>
//   {'payment_amount': '€30', 'new_limit': 'None'}
//   </response>
//
// and a regular one is just the dict. Close tags are accepted in both the
// `</tag>` and `<\tag>` spellings.

#ifndef SLOTFORGE_GENPARSE_H_
#define SLOTFORGE_GENPARSE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slotforge/errors.h"
#include "slotforge/slot_map.h"

namespace slotforge {

struct TagGrammar {
  std::string open_think = "<thinking>";
  std::string close_think = "</thinking>";
  std::string open_response = "<response>";
  std::string close_response = "</response>";
};

enum class TagName { kThink, kResponse };

enum class FindingKind {
  kTagImbalance,      // open tag without a close tag
  kMissingResponse,   // think block present, response tags absent
  kMultipleBlocks,    // more than one think or response block
  kStrayText,         // non-blank text outside the expected blocks
  kProseStripped,     // text around the outermost braces was dropped
  kTrailingComma,
  kBareValue,         // unquoted key or value (None/null become "None")
  kRepairedQuote,     // unescaped quote inside a string kept literally
  kDuplicateKey,
  kMalformed,         // dict could not be parsed at all
};

std::string_view FindingKindName(FindingKind kind);

struct Finding {
  FindingKind kind;
  std::string detail;

  bool operator==(const Finding &) const = default;
};

struct TaggedBlock {
  std::string inner;
  size_t inner_begin = 0;  // offsets into the searched text
  size_t inner_end = 0;
  size_t block_end = 0;    // one past the close tag, or text size if unclosed
  bool closed = false;
};

// Content between the first open tag and the nearest close tag after it.
// An unclosed block runs to end of text and adds a kTagImbalance finding.
std::optional<TaggedBlock> ExtractTagged(std::string_view text,
                                         const TagGrammar &grammar,
                                         TagName tag,
                                         std::vector<Finding> *findings);

class MalformedDictError : public Error {
 public:
  MalformedDictError(size_t position, const std::string &cause)
      : Error(ErrorCode::kMalformedDict,
              "at offset " + std::to_string(position) + ": " + cause),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

struct SlotDictParse {
  SlotMap slots;
  std::vector<Finding> findings;
};

// Lenient flat-dict parser. Throws Error(kNoDictFound) when there is no '{'
// and MalformedDictError when the literal cannot be read.
SlotDictParse ParseSlotDict(std::string_view text);

enum class GenerationMode { kRegular, kReasoning, kMalformed };

std::string_view GenerationModeName(GenerationMode mode);

struct ParsedGeneration {
  GenerationMode mode = GenerationMode::kMalformed;
  std::optional<std::string> thinking;
  SlotMap slot_values;
  std::vector<Finding> diagnostics;
};

// Never throws on content: an unreadable dict yields mode kMalformed with an
// empty slot map.
ParsedGeneration ParseGeneration(std::string_view text,
                                 const TagGrammar &grammar = {});

}  // namespace slotforge

#endif  // SLOTFORGE_GENPARSE_H_
