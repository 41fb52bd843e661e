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

#include "oracles.h"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace slotforge::testing {

namespace {

std::vector<std::string> Words(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) {
    for (char &c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(w);
  }
  return out;
}

bool Window(const std::vector<std::string> &small,
            const std::vector<std::string> &big) {
  if (small.size() > big.size()) return false;
  for (size_t start = 0; start + small.size() <= big.size(); ++start) {
    bool all = true;
    for (size_t i = 0; i < small.size(); ++i) all &= big[start + i] == small[i];
    if (all) return true;
  }
  return false;
}

bool OracleMatch(const std::string &p, const std::string &g, bool containment) {
  if (!containment) return p == g;
  std::vector<std::string> a = Words(p), b = Words(g);
  return Window(a, b) || Window(b, a);
}

const char *const kWords[] = {"monthly", "30", "euros", "every", "month",
                              "yearly", "two", "kids", "none"};

}  // namespace

OracleScore BruteForceScore(const std::map<std::string, std::string> &pred,
                            const std::map<std::string, std::string> &gold,
                            const std::optional<std::vector<std::string>> &queried,
                            bool containment) {
  std::set<std::string> labels;
  if (queried) {
    labels.insert(queried->begin(), queried->end());
  } else {
    for (const auto &[k, v] : pred) labels.insert(k);
    for (const auto &[k, v] : gold) labels.insert(k);
  }
  OracleScore s;
  for (const std::string &label : labels) {
    auto p = pred.find(label);
    auto g = gold.find(label);
    const bool has_p = p != pred.end() && p->second != "None" && !p->second.empty();
    const bool has_g = g != gold.end() && g->second != "None" && !g->second.empty();
    // Enumerate the four presence combinations explicitly.
    SlotOutcome outcome;
    if (has_p && has_g) {
      outcome = OracleMatch(p->second, g->second, containment)
                    ? SlotOutcome::kTruePositive
                    : SlotOutcome::kFalsePositiveAndNegative;
    } else if (has_p) {
      outcome = SlotOutcome::kFalsePositive;
    } else if (has_g) {
      outcome = SlotOutcome::kFalseNegative;
    } else {
      outcome = SlotOutcome::kTrueNegative;
    }
    s.per_slot[label] = outcome;
    switch (outcome) {
      case SlotOutcome::kTruePositive: ++s.tp; break;
      case SlotOutcome::kFalsePositive: ++s.fp; break;
      case SlotOutcome::kFalseNegative: ++s.fn; break;
      case SlotOutcome::kFalsePositiveAndNegative: ++s.fp; ++s.fn; break;
      case SlotOutcome::kTrueNegative: break;
    }
  }
  return s;
}

MetricsCase RandomMetricsCase(SplitMix64 &rng, int max_slots) {
  auto value = [&] {
    if (rng.UniformInt(0, 5) == 0) return std::string("None");
    int n = static_cast<int>(rng.UniformInt(1, 3));
    std::string v;
    for (int i = 0; i < n; ++i) {
      if (i) v += ' ';
      v += kWords[rng.UniformInt(0, std::size(kWords) - 1)];
    }
    return v;
  };
  const int n_labels = static_cast<int>(rng.UniformInt(1, max_slots));
  MetricsCase c;
  std::vector<std::string> labels;
  for (int i = 0; i < n_labels; ++i) labels.push_back("slot_" + std::to_string(i));
  for (const std::string &l : labels) {
    switch (rng.UniformInt(0, 3)) {
      case 0: c.gold[l] = value(); break;
      case 1: c.pred[l] = value(); break;
      case 2: {
        c.gold[l] = value();
        // Often reuse or extend the gold value so matches are common.
        c.pred[l] = rng.UniformInt(0, 1) ? c.gold[l] : value();
        if (rng.UniformInt(0, 3) == 0) c.pred[l] += " euros";
        break;
      }
      default: break;
    }
  }
  if (rng.UniformInt(0, 1)) {
    std::vector<std::string> q;
    for (const std::string &l : labels) {
      if (rng.UniformInt(0, 4) != 0) q.push_back(l);
    }
    rng.Shuffle(std::span<std::string>(q));
    c.queried = q;
  }
  return c;
}

SlotMap ToSlotMap(const std::map<std::string, std::string> &m) {
  SlotMap out;
  for (const auto &[k, v] : m) out.Set(k, v);
  return out;
}

FrameMatrix LoopForward(const FrameMatrix &x, const AdapterParams &p,
                        Activation activation) {
  const int m = static_cast<int>(x.rows());
  const int d_in = static_cast<int>(p.w1.rows());
  const int h = static_cast<int>(p.w1.cols());
  const int d_out = static_cast<int>(p.w2.cols());
  FrameMatrix out(m, d_out);
  for (int r = 0; r < m; ++r) {
    std::vector<double> hidden(h);
    for (int j = 0; j < h; ++j) {
      double z = p.b1(j);
      for (int i = 0; i < d_in; ++i) z += x(r, i) * p.w1(i, j);
      if (activation == Activation::kGelu) {
        z = z * 0.5 * (1.0 + std::erf(z * M_SQRT1_2));
      } else if (activation == Activation::kTanh) {
        z = std::tanh(z);
      }
      hidden[j] = z;
    }
    for (int k = 0; k < d_out; ++k) {
      double y = p.b2(k);
      for (int j = 0; j < h; ++j) y += hidden[j] * p.w2(j, k);
      out(r, k) = y;
    }
  }
  return out;
}

}  // namespace slotforge::testing
