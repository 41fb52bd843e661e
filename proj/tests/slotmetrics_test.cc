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

#include "slotforge/slotmetrics.h"

#include <gtest/gtest.h>

#include "oracles.h"

namespace slotforge {
namespace {

const Normalization kAll;

TEST(NormalizeTest, Examples) {
  EXPECT_EQ(NormalizeValue("€30", kAll), "30");
  EXPECT_EQ(NormalizeValue("  Monthly  ", kAll), "monthly");
  EXPECT_EQ(NormalizeValue("Patrick.", kAll), "patrick");
  EXPECT_EQ(NormalizeValue("Two   \t adults", kAll), "two adults");
  EXPECT_EQ(NormalizeValue("ＡＢＣ１２", kAll), "abc12");
  EXPECT_EQ(NormalizeValue("Siobhán", kAll), "siobhán");
  EXPECT_EQ(NormalizeValue("3:30 pm", kAll), "3:30 pm");
}

TEST(NormalizeTest, FlagsIndependent) {
  EXPECT_EQ(NormalizeValue(" Monthly. ", Normalization::None()), " Monthly. ");
  Normalization lower_only = Normalization::None();
  lower_only.lowercase = true;
  EXPECT_EQ(NormalizeValue("€30 A", lower_only), "€30 a");
}

TEST(ValuesMatchTest, Containment) {
  const MatchConfig c = MatchConfig::Containment();
  EXPECT_TRUE(ValuesMatch("€30", "30 euros", c));
  EXPECT_TRUE(ValuesMatch("30 euros", "€30", c));
  EXPECT_FALSE(ValuesMatch("monthly", "yearly", c));
  EXPECT_FALSE(ValuesMatch("30 a", "30 per a", c));
  for (const char *x : {"€30", "monthly", "O'Brien", "", "!!", "Zoë"}) {
    EXPECT_TRUE(ValuesMatch(x, x, c)) << x;
    EXPECT_TRUE(ValuesMatch(x, x, MatchConfig::Exact())) << x;
  }
}

TEST(ValuesMatchTest, Exact) {
  EXPECT_FALSE(ValuesMatch("€30", "30 euros", MatchConfig::Exact()));
  EXPECT_FALSE(ValuesMatch("Monthly", "monthly", MatchConfig::Exact()));
  MatchConfig normalized_exact{MatchMode::kExact, Normalization()};
  EXPECT_TRUE(ValuesMatch("Monthly.", "monthly", normalized_exact));
  EXPECT_FALSE(ValuesMatch("€30", "30 euros", normalized_exact));
}

TEST(ScoreExampleTest, Identity) {
  SlotMap m{{"amount", "€30"}, {"freq", "monthly"}};
  ExampleScore s = ScoreExample(m, m, std::nullopt, MatchConfig());
  EXPECT_EQ(s.tp, 2);
  EXPECT_EQ(s.fp, 0);
  EXPECT_EQ(s.fn, 0);
}

TEST(ScoreExampleTest, WrongValueIsFpAndFn) {
  SlotMap gold{{"amount", "€30"}, {"freq", "monthly"}};
  SlotMap pred{{"amount", "30"}, {"freq", "yearly"}};
  ExampleScore s = ScoreExample(pred, gold, std::nullopt, MatchConfig());
  EXPECT_EQ(s.tp, 1);
  EXPECT_EQ(s.fp, 1);
  EXPECT_EQ(s.fn, 1);
  EXPECT_EQ(s.per_slot.at("freq"), SlotOutcome::kFalsePositiveAndNegative);
}

TEST(ScoreExampleTest, QueriedTrueNegatives) {
  SlotMap target{{"payment_frequency", "monthly"}, {"payment_amount", "€30"},
                 {"new_limit", "None"}, {"family_members_count", "None"},
                 {"review_period", "None"}};
  std::vector<std::string> queried = {"new_limit", "family_members_count",
                                      "review_period", "payment_frequency",
                                      "payment_amount"};
  ExampleScore s = ScoreExample(target, target, queried, MatchConfig());
  EXPECT_EQ(s.tp, 2);
  EXPECT_EQ(s.fp + s.fn, 0);
  int tn = 0;
  for (const auto &[l, o] : s.per_slot) tn += o == SlotOutcome::kTrueNegative;
  EXPECT_EQ(tn, 3);
}

TEST(ScoreExampleTest, UnqueriedLabelsIgnoredUnderQuery) {
  SlotMap gold{{"a", "1"}};
  SlotMap pred{{"a", "1"}, {"zz", "extra"}};
  ExampleScore s =
      ScoreExample(pred, gold, std::vector<std::string>{"a"}, MatchConfig());
  EXPECT_EQ(s.fp, 0);
  EXPECT_FALSE(s.per_slot.contains("zz"));
}

TEST(ScoreExampleTest, MalformedIsAllFalseNegative) {
  SlotMap gold{{"a", "1"}, {"b", "None"}, {"c", "3"}};
  ExampleScore s = ScoreMalformed(gold, std::nullopt);
  EXPECT_EQ(s.fn, 2);
  EXPECT_EQ(s.fp, 0);
  EXPECT_TRUE(s.malformed);
}

TEST(ScoreExampleTest, MatchesBruteForceOracle) {
  SplitMix64 rng(2024);
  for (int i = 0; i < 3000; ++i) {
    testing::MetricsCase c = testing::RandomMetricsCase(rng, 6);
    for (bool containment : {true, false}) {
      MatchConfig config = containment ? MatchConfig::Containment()
                                       : MatchConfig::Exact();
      ExampleScore got = ScoreExample(testing::ToSlotMap(c.pred),
                                      testing::ToSlotMap(c.gold), c.queried,
                                      config);
      testing::OracleScore want =
          testing::BruteForceScore(c.pred, c.gold, c.queried, containment);
      ASSERT_EQ(got.tp, want.tp) << i;
      ASSERT_EQ(got.fp, want.fp) << i;
      ASSERT_EQ(got.fn, want.fn) << i;
      ASSERT_EQ(got.per_slot, want.per_slot) << i;
    }
  }
}

TEST(ScoreExampleTest, SymmetricIdentityUnderSupersetQuery) {
  SplitMix64 rng(8);
  for (int i = 0; i < 500; ++i) {
    testing::MetricsCase c = testing::RandomMetricsCase(rng, 6);
    std::vector<std::string> q;
    for (const auto &[k, v] : c.gold) q.push_back(k);
    q.push_back("extra_label");
    SlotMap g = testing::ToSlotMap(c.gold);
    ExampleScore s = ScoreExample(g, g, q, MatchConfig());
    ASSERT_EQ(s.fp, 0);
    ASSERT_EQ(s.fn, 0);
  }
}

TEST(ScoreExampleTest, Monotonicity) {
  SplitMix64 rng(77);
  for (int i = 0; i < 500; ++i) {
    testing::MetricsCase c = testing::RandomMetricsCase(rng, 5);
    c.queried.reset();
    const MatchConfig cfg;
    ExampleScore base = ScoreExample(testing::ToSlotMap(c.pred),
                                     testing::ToSlotMap(c.gold), std::nullopt, cfg);
    ScoreReport r0 = Aggregate(std::vector<ExampleScore>{base}, cfg);

    auto pred2 = c.pred;
    pred2["new_unmatched"] = "zebra";
    ScoreReport r1 = Aggregate(
        std::vector<ExampleScore>{ScoreExample(testing::ToSlotMap(pred2),
                                               testing::ToSlotMap(c.gold),
                                               std::nullopt, cfg)},
        cfg);
    ASSERT_LE(r1.precision, r0.precision + 1e-15);

    auto gold2 = c.gold, pred3 = c.pred;
    gold2["new_matched"] = "kids";
    pred3["new_matched"] = "kids";
    ScoreReport r2 = Aggregate(
        std::vector<ExampleScore>{ScoreExample(testing::ToSlotMap(pred3),
                                               testing::ToSlotMap(gold2),
                                               std::nullopt, cfg)},
        cfg);
    ASSERT_GE(r2.recall, r0.recall - 1e-15);
  }
}

TEST(AggregateTest, Arithmetic) {
  ExampleScore s;
  s.tp = s.fp = s.fn = 1;
  ScoreReport r = Aggregate(std::vector<ExampleScore>{s}, MatchConfig());
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.f1, 0.5);
}

TEST(AggregateTest, EmptyConvention) {
  ScoreReport r = Aggregate(std::vector<ExampleScore>{}, MatchConfig());
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1, 1.0);
  ExampleScore only_fn;
  only_fn.fn = 2;
  r = Aggregate(std::vector<ExampleScore>{only_fn}, MatchConfig());
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
}

TEST(AggregateTest, CountAdditivity) {
  SplitMix64 rng(31);
  std::vector<ExampleScore> scores;
  ExampleScore total;
  for (int i = 0; i < 200; ++i) {
    testing::MetricsCase c = testing::RandomMetricsCase(rng, 6);
    ExampleScore s = ScoreExample(testing::ToSlotMap(c.pred),
                                  testing::ToSlotMap(c.gold), c.queried,
                                  MatchConfig());
    total.tp += s.tp;
    total.fp += s.fp;
    total.fn += s.fn;
    scores.push_back(s);
  }
  ScoreReport a = Aggregate(scores, MatchConfig());
  ScoreReport b = Aggregate(std::vector<ExampleScore>{total}, MatchConfig());
  EXPECT_EQ(a.precision, b.precision);
  EXPECT_EQ(a.recall, b.recall);
  EXPECT_EQ(a.f1, b.f1);
  EXPECT_EQ(a.n_examples, 200);
}

TEST(HarmonicF1Test, TableValues) {
  EXPECT_NEAR(HarmonicF1(0.6292, 0.8726), 0.7312, 0.0005);
  EXPECT_NEAR(HarmonicF1(0.6431, 0.9319), 0.7610, 0.0005);
  EXPECT_NEAR(HarmonicF1(0.6308, 0.9400), 0.7550, 0.0005);
  EXPECT_EQ(HarmonicF1(0.0, 0.0), 0.0);
}

TEST(ReportJsonTest, RoundTripAndLayout) {
  ExampleScore s = ScoreExample(SlotMap{{"a", "1"}, {"b", "x"}},
                                SlotMap{{"a", "1"}, {"c", "2"}}, std::nullopt,
                                MatchConfig());
  ScoreReport r = Aggregate(std::vector<ExampleScore>{s, ScoreMalformed({{"a", "1"}}, std::nullopt)},
                            MatchConfig());
  auto json = ReportToJson(r);
  std::vector<std::string> keys;
  for (auto it = json.begin(); it != json.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"precision", "recall", "f1",
                                            "counts", "per_slot", "n_examples",
                                            "n_malformed", "match_config"}));
  EXPECT_EQ(json["counts"]["tp"], 1);
  EXPECT_EQ(json["n_malformed"], 1);
  ScoreReport back = ReportFromJson(json);
  EXPECT_EQ(back.tp, r.tp);
  EXPECT_EQ(back.fn, r.fn);
  EXPECT_EQ(back.f1, r.f1);
  EXPECT_EQ(back.match_config, r.match_config);
  EXPECT_EQ(back.per_slot.at("a").tp, 1);
}

}  // namespace
}  // namespace slotforge
