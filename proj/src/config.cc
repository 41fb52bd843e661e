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

#include "slotforge/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>

#include "slotforge/errors.h"
#include "tomlplusplus/toml.hpp"

namespace slotforge {

namespace {

[[noreturn]] void BadValue(const std::string &key, const std::string &value,
                           const std::string &why) {
  throw Error(ErrorCode::kInvalidConfig,
              key + " = '" + value + "': " + why);
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int64_t ParseInt(const std::string &key, const std::string &value) {
  std::string t = Trim(value);
  int64_t out = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    BadValue(key, value, "expected an integer");
  }
  return out;
}

int ParseSmallInt(const std::string &key, const std::string &value) {
  int64_t v = ParseInt(key, value);
  if (v < -1000000000 || v > 1000000000) BadValue(key, value, "out of range");
  return static_cast<int>(v);
}

uint64_t ParseSeed(const std::string &key, const std::string &value) {
  std::string t = Trim(value);
  uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    BadValue(key, value, "expected a non-negative 64-bit integer");
  }
  return out;
}

bool ParseBool(const std::string &key, const std::string &value) {
  std::string t = Trim(value);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  BadValue(key, value, "expected true or false");
}

std::string BoolText(bool b) { return b ? "true" : "false"; }

struct KeySpec {
  std::string key;
  std::function<std::string(const CliConfig &)> get;
  std::function<void(CliConfig &, const std::string &)> set;
};

#define SF_INT_KEY(name, field)                                     \
  KeySpec {                                                         \
    name, [](const CliConfig &c) { return std::to_string(c.field); }, \
        [](CliConfig &c, const std::string &v) {                    \
          c.field = ParseSmallInt(name, v);                         \
        }                                                           \
  }

#define SF_BOOL_KEY(name, field)                                          \
  KeySpec {                                                               \
    name, [](const CliConfig &c) { return BoolText(c.field); },           \
        [](CliConfig &c, const std::string &v) { c.field = ParseBool(name, v); } \
  }

const std::vector<KeySpec> &Registry() {
  static const std::vector<KeySpec> kSpecs = {
      {"forge.master_seed",
       [](const CliConfig &c) { return std::to_string(c.forge.master_seed); },
       [](CliConfig &c, const std::string &v) {
         c.forge.master_seed = ParseSeed("forge.master_seed", v);
       }},
      SF_INT_KEY("forge.context_max", forge.context_max),
      SF_INT_KEY("forge.distractors_min", forge.distractors_min),
      SF_INT_KEY("forge.distractors_max", forge.distractors_max),
      SF_INT_KEY("forge.prompts_per_case", forge.prompts_per_case),
      {"forge.case_weights",
       [](const CliConfig &c) {
         std::string s;
         for (int w : c.forge.case_weights) {
           s += (s.empty() ? "" : ",") + std::to_string(w);
         }
         return s;
       },
       [](CliConfig &c, const std::string &v) {
         std::vector<int> weights;
         std::stringstream in(v);
         std::string part;
         while (std::getline(in, part, ',')) {
           weights.push_back(ParseSmallInt("forge.case_weights", part));
         }
         if (weights.size() != kNumPromptCases) {
           BadValue("forge.case_weights", v,
                    "expected 4 weights (plain, with_context, with_query, "
                    "with_context_and_query)");
         }
         std::copy(weights.begin(), weights.end(),
                   c.forge.case_weights.begin());
       }},
      {"forge.distractor_pool",
       [](const CliConfig &c) {
         return std::string(c.forge.distractor_pool == DistractorPool::kCorpus
                                ? "corpus"
                                : "domain");
       },
       [](CliConfig &c, const std::string &v) {
         std::string t = Trim(v);
         if (t == "corpus") {
           c.forge.distractor_pool = DistractorPool::kCorpus;
         } else if (t == "domain") {
           c.forge.distractor_pool = DistractorPool::kDomain;
         } else {
           BadValue("forge.distractor_pool", v, "expected corpus or domain");
         }
       }},
      {"forge.format_directive",
       [](const CliConfig &c) {
         const auto &bank = c.forge.template_banks.begin()->second;
         return bank.empty() ? std::string(kDefaultFormatDirective)
                             : bank.front().format_directive;
       },
       [](CliConfig &c, const std::string &v) {
         for (auto &[prompt_case, bank] : c.forge.template_banks) {
           for (PromptTemplate &t : bank) t.format_directive = v;
         }
       }},
      {"metrics.matching",
       [](const CliConfig &c) {
         return std::string(MatchModeName(c.metrics.matching));
       },
       [](CliConfig &c, const std::string &v) {
         std::string t = Trim(v);
         if (t == "containment") {
           c.metrics.matching = MatchMode::kContainment;
         } else if (t == "exact") {
           c.metrics.matching = MatchMode::kExact;
         } else {
           BadValue("metrics.matching", v, "expected exact or containment");
         }
       }},
      SF_BOOL_KEY("metrics.lowercase", metrics.normalization.lowercase),
      SF_BOOL_KEY("metrics.compat_fold", metrics.normalization.compat_fold),
      SF_BOOL_KEY("metrics.collapse_whitespace",
                  metrics.normalization.collapse_whitespace),
      SF_BOOL_KEY("metrics.strip_edge_symbols",
                  metrics.normalization.strip_edge_symbols),
      SF_INT_KEY("adapter.d_enc", adapter.d_enc),
      SF_INT_KEY("adapter.stack_factor", adapter.stack_factor),
      SF_INT_KEY("adapter.d_hidden", adapter.d_hidden),
      SF_INT_KEY("adapter.d_llm", adapter.d_llm),
      {"adapter.pad_policy",
       [](const CliConfig &c) {
         return std::string(PadPolicyName(c.adapter.pad_policy));
       },
       [](CliConfig &c, const std::string &v) {
         std::string t = Trim(v);
         if (t == "zero_pad") {
           c.adapter.pad_policy = PadPolicy::kZeroPad;
         } else if (t == "truncate") {
           c.adapter.pad_policy = PadPolicy::kTruncate;
         } else {
           BadValue("adapter.pad_policy", v, "expected zero_pad or truncate");
         }
       }},
      {"adapter.activation",
       [](const CliConfig &c) {
         return std::string(ActivationName(c.adapter.activation));
       },
       [](CliConfig &c, const std::string &v) {
         std::string t = Trim(v);
         for (Activation a :
              {Activation::kGelu, Activation::kTanh, Activation::kIdentity}) {
           if (ActivationName(a) == t) {
             c.adapter.activation = a;
             return;
           }
         }
         BadValue("adapter.activation", v, "expected gelu, tanh or identity");
       }},
      SF_INT_KEY("annotate.max_retries", annotate.max_retries),
      SF_INT_KEY("annotate.max_in_flight", annotate.max_in_flight),
      {"annotate.max_input_bytes",
       [](const CliConfig &c) {
         return std::to_string(c.annotate.max_input_bytes);
       },
       [](CliConfig &c, const std::string &v) {
         c.annotate.max_input_bytes = ParseInt("annotate.max_input_bytes", v);
       }},
  };
  return kSpecs;
}

#undef SF_INT_KEY
#undef SF_BOOL_KEY

const KeySpec *FindSpec(const std::string &key) {
  for (const KeySpec &spec : Registry()) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

std::string TomlScalarText(const std::string &key, const toml::node &node) {
  if (auto s = node.value_exact<std::string>()) return *s;
  if (auto i = node.value_exact<int64_t>()) return std::to_string(*i);
  if (auto b = node.value_exact<bool>()) return BoolText(*b);
  if (const toml::array *arr = node.as_array()) {
    std::string out;
    for (const toml::node &item : *arr) {
      auto i = item.value_exact<int64_t>();
      if (!i) {
        throw Error(ErrorCode::kInvalidConfig,
                    key + ": arrays may only hold integers");
      }
      out += (out.empty() ? "" : ",") + std::to_string(*i);
    }
    return out;
  }
  throw Error(ErrorCode::kInvalidConfig,
              key + ": unsupported TOML value type");
}

struct Layer {
  std::map<std::string, std::string> values;
  std::map<PromptCase, std::vector<std::string>> banks;
};

Layer ReadToml(const std::filesystem::path &path) {
  toml::table root;
  try {
    root = toml::parse_file(path.string());
  } catch (const toml::parse_error &e) {
    std::ostringstream why;
    why << path.string() << ": " << e.description() << " at line "
        << e.source().begin.line;
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorCode::kIo, path.string() + ": no such file");
    }
    throw Error(ErrorCode::kInvalidConfig, why.str());
  }
  Layer layer;
  for (const auto &[section_key, section_node] : root) {
    std::string section(section_key.str());
    const toml::table *table = section_node.as_table();
    if (!table) {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ": top-level key '" + section +
                      "' must be a section");
    }
    for (const auto &[key, node] : *table) {
      std::string dotted = section + "." + std::string(key.str());
      if (dotted == "forge.template_banks") {
        const toml::table *banks = node.as_table();
        if (!banks) {
          throw Error(ErrorCode::kInvalidConfig,
                      "forge.template_banks must be a table");
        }
        for (const auto &[case_name, bank_node] : *banks) {
          auto prompt_case = ParsePromptCase(case_name.str());
          const toml::array *arr = bank_node.as_array();
          if (!prompt_case || !arr) {
            throw Error(ErrorCode::kInvalidConfig,
                        "forge.template_banks." + std::string(case_name.str()) +
                            ": expected one of plain, with_context, "
                            "with_query, with_context_and_query holding an "
                            "array of strings");
          }
          std::vector<std::string> &texts = layer.banks[*prompt_case];
          for (const toml::node &item : *arr) {
            auto text = item.value_exact<std::string>();
            if (!text) {
              throw Error(ErrorCode::kInvalidConfig,
                          "template banks may only hold strings");
            }
            texts.push_back(*text);
          }
        }
        continue;
      }
      if (!FindSpec(dotted)) {
        throw Error(ErrorCode::kInvalidConfig,
                    path.string() + ": unknown key " + dotted);
      }
      layer.values[dotted] = TomlScalarText(dotted, node);
    }
  }
  return layer;
}

}  // namespace

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const KeySpec &spec : Registry()) keys.push_back(spec.key);
  return keys;
}

std::string EnvironmentName(const std::string &key) {
  std::string name = "SLOTFORGE_";
  for (char c : key) {
    name += c == '.' ? '_' : static_cast<char>(std::toupper(
                                 static_cast<unsigned char>(c)));
  }
  return name;
}

std::string ResolvedConfig::Describe() const {
  size_t width = 0;
  for (const auto &[key, v] : provenance) width = std::max(width, key.size());
  std::string out;
  for (const auto &[key, v] : provenance) {
    out += key + std::string(width - key.size(), ' ') + " = " + v.value +
           "  (" + v.source + ")\n";
  }
  return out;
}

ResolvedConfig ResolveConfig(const ConfigSources &sources) {
  ResolvedConfig resolved;
  CliConfig &config = resolved.config;
  for (const KeySpec &spec : Registry()) {
    resolved.provenance[spec.key] = {spec.get(config), "default"};
  }
  for (PromptCase c : kAllPromptCases) {
    resolved.provenance["forge.template_banks." +
                        std::string(PromptCaseName(c))] = {
        std::to_string(config.forge.template_banks[c].size()) + " templates",
        "default"};
  }

  auto apply = [&](const std::string &key, const std::string &value,
                   const std::string &source) {
    const KeySpec *spec = FindSpec(key);
    if (!spec) throw Error(ErrorCode::kInvalidConfig, "unknown key " + key);
    spec->set(config, value);
    resolved.provenance[key] = {spec->get(config), source};
  };

  if (sources.toml_path) {
    Layer layer = ReadToml(*sources.toml_path);
    const std::string source = "toml:" + sources.toml_path->string();
    for (const auto &[prompt_case, texts] : layer.banks) {
      std::vector<PromptTemplate> bank;
      for (const std::string &text : texts) {
        bank.push_back({prompt_case, text, std::string(kDefaultFormatDirective)});
      }
      config.forge.template_banks[prompt_case] = std::move(bank);
      resolved.provenance["forge.template_banks." +
                          std::string(PromptCaseName(prompt_case))] = {
          std::to_string(texts.size()) + " templates", source};
    }
    // The directive applies to every bank, so it goes after bank loading.
    for (const auto &[key, value] : layer.values) {
      if (key != "forge.format_directive") apply(key, value, source);
    }
    auto directive = layer.values.find("forge.format_directive");
    if (directive != layer.values.end()) {
      apply(directive->first, directive->second, source);
    }
  }
  for (const KeySpec &spec : Registry()) {
    auto it = sources.environment.find(EnvironmentName(spec.key));
    if (it != sources.environment.end()) {
      apply(spec.key, it->second, "env:" + it->first);
    }
  }
  for (const auto &[key, value] : sources.flags) apply(key, value, "flag");
  return resolved;
}

}  // namespace slotforge
