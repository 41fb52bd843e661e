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

#include <algorithm>
#include <set>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "slotforge/errors.h"

namespace slotforge {

using nlohmann::ordered_json;

namespace {

bool IsWordChar(UChar32 c) {
  return (U_GET_GC_MASK(c) & (U_GC_L_MASK | U_GC_N_MASK | U_GC_M_MASK)) != 0;
}

std::string ToUtf8(const std::u32string &text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32 *>(text.data()),
      static_cast<int32_t>(text.size()));
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::u32string Folded(std::string_view value, const Normalization &norm) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(value.data(), static_cast<int32_t>(value.size())));
  if (norm.compat_fold) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2 *nfkc = icu::Normalizer2::getNFKCInstance(status);
    if (U_SUCCESS(status)) {
      icu::UnicodeString folded = nfkc->normalize(s, status);
      if (U_SUCCESS(status)) s = folded;
    }
  }
  if (norm.lowercase) s.toLower(icu::Locale::getRoot());
  std::u32string out(static_cast<size_t>(s.countChar32()), U'\0');
  UErrorCode status = U_ZERO_ERROR;
  s.toUTF32(reinterpret_cast<UChar32 *>(out.data()),
            static_cast<int32_t>(out.size()), status);
  return out;
}

std::u32string StripEdges(const std::u32string &token) {
  size_t b = 0, e = token.size();
  while (b < e && !IsWordChar(static_cast<UChar32>(token[b]))) ++b;
  while (e > b && !IsWordChar(static_cast<UChar32>(token[e - 1]))) --e;
  return token.substr(b, e - b);
}

bool IsContiguousSubsequence(const std::vector<std::string> &needle,
                             const std::vector<std::string> &haystack) {
  if (needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

std::string Trimmed(std::string_view text) {
  size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(b, e - b + 1));
}

double Ratio(int numerator, int denominator, bool all_zero) {
  if (denominator == 0) return all_zero ? 1.0 : 0.0;
  return static_cast<double>(numerator) / denominator;
}

[[noreturn]] void Malformed(const std::string &cause) {
  throw Error(ErrorCode::kMalformedLine, "score report: " + cause);
}

}  // namespace

std::string_view MatchModeName(MatchMode mode) {
  return mode == MatchMode::kExact ? "exact" : "containment";
}

std::string_view SlotOutcomeName(SlotOutcome outcome) {
  switch (outcome) {
    case SlotOutcome::kTruePositive: return "tp";
    case SlotOutcome::kFalsePositive: return "fp";
    case SlotOutcome::kFalseNegative: return "fn";
    case SlotOutcome::kFalsePositiveAndNegative: return "fp_and_fn";
    case SlotOutcome::kTrueNegative: return "true_negative";
  }
  return "tp";
}

std::string NormalizeValue(std::string_view value, const Normalization &norm) {
  std::u32string text = Folded(value, norm);
  // Alternate whitespace runs and tokens; tokens are edge-stripped, runs are
  // either kept or collapsed.
  std::u32string out;
  std::u32string pending_space;
  size_t i = 0;
  bool wrote_token = false;
  while (i < text.size()) {
    size_t j = i;
    if (u_isUWhiteSpace(static_cast<UChar32>(text[i]))) {
      while (j < text.size() && u_isUWhiteSpace(static_cast<UChar32>(text[j]))) {
        ++j;
      }
      pending_space += text.substr(i, j - i);
    } else {
      while (j < text.size() &&
             !u_isUWhiteSpace(static_cast<UChar32>(text[j]))) {
        ++j;
      }
      std::u32string token = text.substr(i, j - i);
      if (norm.strip_edge_symbols) token = StripEdges(token);
      if (!token.empty() || !norm.collapse_whitespace) {
        if (norm.collapse_whitespace) {
          if (wrote_token) out += U' ';
        } else {
          out += pending_space;
        }
        out += token;
        wrote_token = true;
      }
      pending_space.clear();
    }
    i = j;
  }
  if (!norm.collapse_whitespace) out += pending_space;
  return ToUtf8(out);
}

std::vector<std::string> NormalizedTokens(std::string_view value,
                                          const Normalization &norm) {
  std::string normalized = NormalizeValue(value, norm);
  std::vector<std::string> tokens;
  size_t pos = 0;
  while (pos < normalized.size()) {
    size_t b = normalized.find_first_not_of(" \t\r\n", pos);
    if (b == std::string::npos) break;
    size_t e = normalized.find_first_of(" \t\r\n", b);
    if (e == std::string::npos) e = normalized.size();
    tokens.push_back(normalized.substr(b, e - b));
    pos = e;
  }
  return tokens;
}

bool ValuesMatch(std::string_view predicted, std::string_view gold,
                 const MatchConfig &config) {
  if (config.matching == MatchMode::kExact) {
    return NormalizeValue(predicted, config.normalization) ==
           NormalizeValue(gold, config.normalization);
  }
  std::vector<std::string> p = NormalizedTokens(predicted, config.normalization);
  std::vector<std::string> g = NormalizedTokens(gold, config.normalization);
  // Values made only of symbols have no tokens; compare them as written.
  if (p.empty() || g.empty()) {
    return p.empty() && g.empty() && Trimmed(predicted) == Trimmed(gold);
  }
  return IsContiguousSubsequence(p, g) || IsContiguousSubsequence(g, p);
}

ExampleScore ScoreExample(const SlotMap &predicted, const SlotMap &gold,
                          const std::optional<std::vector<std::string>> &queried,
                          const MatchConfig &config) {
  std::vector<std::string> labels;
  if (queried) {
    std::set<std::string> seen;
    for (const std::string &label : *queried) {
      if (seen.insert(label).second) labels.push_back(label);
    }
  } else {
    labels = gold.Labels();
    for (const std::string &label : predicted.Labels()) {
      if (!gold.Contains(label)) labels.push_back(label);
    }
  }

  ExampleScore score;
  for (const std::string &label : labels) {
    const std::string *p = predicted.Find(label);
    const std::string *g = gold.Find(label);
    bool has_p = p != nullptr && !IsNoneValue(*p);
    bool has_g = g != nullptr && !IsNoneValue(*g);
    SlotOutcome outcome;
    if (has_p && has_g) {
      if (ValuesMatch(*p, *g, config)) {
        outcome = SlotOutcome::kTruePositive;
        ++score.tp;
      } else {
        outcome = SlotOutcome::kFalsePositiveAndNegative;
        ++score.fp;
        ++score.fn;
      }
    } else if (has_p) {
      outcome = SlotOutcome::kFalsePositive;
      ++score.fp;
    } else if (has_g) {
      outcome = SlotOutcome::kFalseNegative;
      ++score.fn;
    } else {
      outcome = SlotOutcome::kTrueNegative;
    }
    score.per_slot[label] = outcome;
  }
  return score;
}

ExampleScore ScoreMalformed(
    const SlotMap &gold, const std::optional<std::vector<std::string>> &queried) {
  ExampleScore score =
      ScoreExample(SlotMap(), gold, queried, MatchConfig::Exact());
  score.malformed = true;
  return score;
}

double HarmonicF1(double precision, double recall) {
  double sum = precision + recall;
  if (sum == 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

ScoreReport Aggregate(std::span<const ExampleScore> scores,
                      const MatchConfig &config) {
  ScoreReport report;
  report.match_config = config;
  for (const ExampleScore &score : scores) {
    report.tp += score.tp;
    report.fp += score.fp;
    report.fn += score.fn;
    ++report.n_examples;
    if (score.malformed) ++report.n_malformed;
    for (const auto &[label, outcome] : score.per_slot) {
      SlotCounts &counts = report.per_slot[label];
      switch (outcome) {
        case SlotOutcome::kTruePositive: ++counts.tp; break;
        case SlotOutcome::kFalsePositive: ++counts.fp; break;
        case SlotOutcome::kFalseNegative: ++counts.fn; break;
        case SlotOutcome::kFalsePositiveAndNegative:
          ++counts.fp;
          ++counts.fn;
          break;
        case SlotOutcome::kTrueNegative: ++counts.tn; break;
      }
    }
  }
  bool all_zero = report.tp == 0 && report.fp == 0 && report.fn == 0;
  report.precision = Ratio(report.tp, report.tp + report.fp, all_zero);
  report.recall = Ratio(report.tp, report.tp + report.fn, all_zero);
  report.f1 = HarmonicF1(report.precision, report.recall);
  return report;
}

ordered_json ReportToJson(const ScoreReport &report) {
  ordered_json node;
  node["precision"] = report.precision;
  node["recall"] = report.recall;
  node["f1"] = report.f1;
  node["counts"] = {{"tp", report.tp}, {"fp", report.fp}, {"fn", report.fn}};
  ordered_json per_slot = ordered_json::object();
  for (const auto &[label, c] : report.per_slot) {
    per_slot[label] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
  }
  node["per_slot"] = std::move(per_slot);
  node["n_examples"] = report.n_examples;
  node["n_malformed"] = report.n_malformed;
  const Normalization &n = report.match_config.normalization;
  node["match_config"] = {
      {"matching", MatchModeName(report.match_config.matching)},
      {"normalization",
       {{"lowercase", n.lowercase},
        {"compat_fold", n.compat_fold},
        {"collapse_whitespace", n.collapse_whitespace},
        {"strip_edge_symbols", n.strip_edge_symbols}}}};
  return node;
}

ScoreReport ReportFromJson(const ordered_json &node) {
  if (!node.is_object()) Malformed("not a JSON object");
  auto number = [&](const ordered_json &obj, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
      Malformed(std::string("missing numeric \"") + key + "\"");
    }
    return it->get<double>();
  };
  auto count = [&](const ordered_json &obj, const char *key) {
    auto it = obj.find(key);
    return it != obj.end() && it->is_number_integer() ? it->get<int>() : 0;
  };
  ScoreReport report;
  report.precision = number(node, "precision");
  report.recall = number(node, "recall");
  report.f1 = number(node, "f1");
  if (auto it = node.find("counts"); it != node.end() && it->is_object()) {
    report.tp = count(*it, "tp");
    report.fp = count(*it, "fp");
    report.fn = count(*it, "fn");
  }
  if (auto it = node.find("per_slot"); it != node.end() && it->is_object()) {
    for (auto s = it->begin(); s != it->end(); ++s) {
      report.per_slot[s.key()] = {count(*s, "tp"), count(*s, "fp"),
                                  count(*s, "fn"), count(*s, "tn")};
    }
  }
  report.n_examples = count(node, "n_examples");
  report.n_malformed = count(node, "n_malformed");
  if (auto it = node.find("match_config"); it != node.end()) {
    if (!it->is_object()) Malformed("\"match_config\" must be an object");
    std::string matching = it->value("matching", "containment");
    if (matching == "exact") {
      report.match_config.matching = MatchMode::kExact;
    } else if (matching == "containment") {
      report.match_config.matching = MatchMode::kContainment;
    } else {
      Malformed("unknown matching '" + matching + "'");
    }
    if (auto n = it->find("normalization"); n != it->end() && n->is_object()) {
      Normalization &norm = report.match_config.normalization;
      norm.lowercase = n->value("lowercase", norm.lowercase);
      norm.compat_fold = n->value("compat_fold", norm.compat_fold);
      norm.collapse_whitespace =
          n->value("collapse_whitespace", norm.collapse_whitespace);
      norm.strip_edge_symbols =
          n->value("strip_edge_symbols", norm.strip_edge_symbols);
    }
  }
  return report;
}

}  // namespace slotforge
