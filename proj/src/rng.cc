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

#include "slotforge/rng.h"

#include <string>

namespace slotforge {

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t DeriveSeed(uint64_t master_seed, std::string_view call_id,
                    int64_t turn_index) {
  std::string key(call_id);
  key += '|';
  key += std::to_string(turn_index);
  key += '|';
  key += std::to_string(master_seed);
  return Fnv1a64(key);
}

uint64_t SplitMix64::UniformInt(uint64_t lo, uint64_t hi) {
  const uint64_t range = hi - lo + 1;
  if (range == 0) return (*this)();  // full 64-bit span
  const uint64_t threshold = (0 - range) % range;
  for (;;) {
    uint64_t x = (*this)();
    if (x >= threshold) return lo + x % range;
  }
}

}  // namespace slotforge
