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

#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

namespace slotforge {
namespace {

// Expected values come from tests/oracles/rng_oracle.py.

TEST(Fnv1a64Test, EmptyInputIsOffsetBasis) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
}

TEST(DeriveSeedTest, MatchesOracle) {
  EXPECT_EQ(DeriveSeed(42, "c1", 0), 2377359045733784309ULL);
  EXPECT_EQ(DeriveSeed(42, "c1", 1), 6626302935694594096ULL);
  EXPECT_EQ(DeriveSeed(7, "call-001", 12), 13318868348291415739ULL);
}

TEST(DeriveSeedTest, EmptyCallIdHashesSeparators) {
  EXPECT_EQ(DeriveSeed(0, "", 0), 3217980470487258373ULL);
  EXPECT_EQ(DeriveSeed(0, "", 0), Fnv1a64("|0|0"));
}

TEST(DeriveSeedTest, StableAndTurnSensitive) {
  EXPECT_EQ(DeriveSeed(42, "c1", 0), DeriveSeed(42, "c1", 0));
  EXPECT_NE(DeriveSeed(42, "c1", 0), DeriveSeed(42, "c1", 1));
}

TEST(DeriveSeedTest, MasterSeedPrintedUnsigned) {
  EXPECT_EQ(DeriveSeed(~0ULL, "x", 3),
            Fnv1a64("x|3|18446744073709551615"));
}

TEST(SplitMix64Test, MatchesOracleStream) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng(), 16294208416658607535ULL);
  EXPECT_EQ(rng(), 7960286522194355700ULL);
  EXPECT_EQ(rng(), 487617019471545679ULL);
}

TEST(SplitMix64Test, UniformIntMatchesOracle) {
  SplitMix64 rng(12345);
  std::vector<uint64_t> got;
  for (int i = 0; i < 8; ++i) got.push_back(rng.UniformInt(1, 6));
  EXPECT_EQ(got, (std::vector<uint64_t>{3, 4, 4, 1, 4, 5, 3, 3}));
}

TEST(SplitMix64Test, UniformIntStaysInRange) {
  SplitMix64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    uint64_t v = rng.UniformInt(10, 12);
    ASSERT_GE(v, 10u);
    ASSERT_LE(v, 12u);
  }
  EXPECT_EQ(rng.UniformInt(4, 4), 4u);
}

TEST(SplitMix64Test, ShuffleMatchesOracle) {
  SplitMix64 rng(99);
  std::vector<int> items(10);
  std::iota(items.begin(), items.end(), 0);
  rng.Shuffle(std::span<int>(items));
  EXPECT_EQ(items, (std::vector<int>{2, 8, 1, 7, 6, 4, 5, 9, 0, 3}));
}

TEST(SplitMix64Test, ShuffleIsPermutation) {
  SplitMix64 rng(3);
  std::vector<int> items(50);
  std::iota(items.begin(), items.end(), 0);
  rng.Shuffle(std::span<int>(items));
  std::vector<int> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

}  // namespace
}  // namespace slotforge
