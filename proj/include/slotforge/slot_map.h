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

#ifndef SLOTFORGE_SLOT_MAP_H_
#define SLOTFORGE_SLOT_MAP_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slotforge {

// Literal used for queried slots that have no value.
inline constexpr std::string_view kNoneValue = "None";

// Insertion-ordered label -> value map. Order matters: it drives the order of
// serialized targets and of the gold labels placed in queried-slot lists.
class SlotMap {
 public:
  using Entry = std::pair<std::string, std::string>;

  SlotMap() = default;
  SlotMap(std::initializer_list<Entry> entries);

  // Inserts or overwrites. An overwritten key keeps its original position.
  // Returns true when the key already existed.
  bool Set(std::string_view label, std::string_view value);
  const std::string *Find(std::string_view label) const;
  bool Contains(std::string_view label) const { return Find(label) != nullptr; }
  bool Erase(std::string_view label);

  std::vector<std::string> Labels() const;
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const SlotMap &, const SlotMap &) = default;

 private:
  std::vector<Entry> entries_;
};

// True for a value that denotes "no value": "None" or empty.
bool IsNoneValue(std::string_view value);

// `[a-z][a-z0-9_]*`
bool IsSnakeCaseLabel(std::string_view label);

// Serializes as {'label': 'value', ...} with single quotes; backslash,
// single quote and control whitespace inside strings are backslash-escaped.
// The empty map is "{}".
std::string FormatSlotDict(const SlotMap &slots);

}  // namespace slotforge

#endif  // SLOTFORGE_SLOT_MAP_H_
