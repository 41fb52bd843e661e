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

// Portable hashing and random streams used for dataset forging.
//
// Everything in here is specified down to the bit so that a forge run can be
// reproduced from any language:
//
//   Fnv1a64      64-bit FNV-1a, offset 0xcbf29ce484222325, prime
//                0x100000001b3, over raw bytes.
//   DeriveSeed   Fnv1a64(call_id + "|" + dec(turn_index) + "|" +
//                dec(master_seed)), master_seed printed as unsigned.
//   SplitMix64   state += 0x9e3779b97f4a7c15; z = state;
//                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
//                z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
//                return z ^ (z >> 31).
//   UniformInt   inclusive [lo, hi]; range = hi - lo + 1; threshold =
//                (2^64 - range) mod range; draw x until x >= threshold;
//                return lo + x mod range.
//   Shuffle      Fisher-Yates, i from n-1 down to 1, j = UniformInt(0, i).

#ifndef SLOTFORGE_RNG_H_
#define SLOTFORGE_RNG_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace slotforge {

uint64_t Fnv1a64(std::string_view bytes);

// Stable per-example seed, independent of iteration order.
uint64_t DeriveSeed(uint64_t master_seed, std::string_view call_id,
                    int64_t turn_index);

class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from the inclusive range [lo, hi]. Requires lo <= hi.
  uint64_t UniformInt(uint64_t lo, uint64_t hi);

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(0, i - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace slotforge

#endif  // SLOTFORGE_RNG_H_
