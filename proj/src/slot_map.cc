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

#include "slotforge/slot_map.h"

#include <algorithm>

namespace slotforge {

SlotMap::SlotMap(std::initializer_list<Entry> entries) {
  for (const auto &[label, value] : entries) Set(label, value);
}

bool SlotMap::Set(std::string_view label, std::string_view value) {
  for (auto &entry : entries_) {
    if (entry.first == label) {
      entry.second = value;
      return true;
    }
  }
  entries_.emplace_back(std::string(label), std::string(value));
  return false;
}

const std::string *SlotMap::Find(std::string_view label) const {
  for (const auto &entry : entries_) {
    if (entry.first == label) return &entry.second;
  }
  return nullptr;
}

bool SlotMap::Erase(std::string_view label) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry &e) { return e.first == label; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

std::vector<std::string> SlotMap::Labels() const {
  std::vector<std::string> labels;
  labels.reserve(entries_.size());
  for (const auto &entry : entries_) labels.push_back(entry.first);
  return labels;
}

bool IsNoneValue(std::string_view value) {
  return value.empty() || value == kNoneValue;
}

bool IsSnakeCaseLabel(std::string_view label) {
  if (label.empty() || label[0] < 'a' || label[0] > 'z') return false;
  for (char c : label) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

namespace {

void AppendQuoted(std::string_view text, std::string *out) {
  out->push_back('\'');
  for (char c : text) {
    switch (c) {
      case '\\': out->append("\\\\"); break;
      case '\'': out->append("\\'"); break;
      case '\n': out->append("\\n"); break;
      case '\r': out->append("\\r"); break;
      case '\t': out->append("\\t"); break;
      default: out->push_back(c);
    }
  }
  out->push_back('\'');
}

}  // namespace

std::string FormatSlotDict(const SlotMap &slots) {
  std::string out = "{";
  bool first = true;
  for (const auto &[label, value] : slots) {
    if (!first) out.append(", ");
    first = false;
    AppendQuoted(label, &out);
    out.append(": ");
    AppendQuoted(value, &out);
  }
  out.push_back('}');
  return out;
}

}  // namespace slotforge
