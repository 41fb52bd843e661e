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

#include "slotforge/genparse.h"

#include <cctype>

namespace slotforge {

namespace {

bool IsBlank(std::string_view text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string Trim(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

// `</tag>` is also accepted as `<\tag>`.
std::string BackslashClose(std::string_view close) {
  if (close.size() >= 2 && close[0] == '<' && close[1] == '/') {
    return "<\\" + std::string(close.substr(2));
  }
  return std::string(close);
}

void AppendUtf8(uint32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class DictReader {
 public:
  DictReader(std::string_view text, size_t pos,
             std::vector<Finding> *findings)
      : text_(text), pos_(pos), findings_(findings) {}

  // Reads entries up to and including the closing brace; `pos_` starts just
  // past the opening brace.
  SlotMap Read() {
    SlotMap slots;
    bool after_comma = false;
    for (;;) {
      SkipSpace();
      if (AtEnd()) Fail("unterminated dict");
      if (Peek() == '}') {
        if (after_comma) {
          findings_->push_back({FindingKind::kTrailingComma,
                                "at offset " + std::to_string(pos_)});
        }
        ++pos_;
        return slots;
      }
      std::string key = ReadScalar(/*is_key=*/true);
      SkipSpace();
      if (AtEnd() || Peek() != ':') Fail("expected ':' after key");
      ++pos_;
      SkipSpace();
      if (AtEnd()) Fail("missing value");
      if (Peek() == '{' || Peek() == '[') {
        Fail("nested values are not supported");
      }
      std::string value = ReadScalar(/*is_key=*/false);
      if (slots.Set(key, value)) {
        findings_->push_back({FindingKind::kDuplicateKey,
                              "'" + key + "' repeated; last value kept"});
      }
      SkipSpace();
      if (AtEnd()) Fail("unterminated dict");
      if (Peek() == ',') {
        ++pos_;
        after_comma = true;
      } else if (Peek() == '}') {
        after_comma = false;
      } else {
        Fail("expected ',' or '}'");
      }
    }
  }

  size_t pos() const { return pos_; }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }

  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(Peek()))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string &cause) const {
    throw MalformedDictError(pos_, cause);
  }

  std::string ReadScalar(bool is_key) {
    char c = Peek();
    if (c == '\'' || c == '"') return ReadQuoted(c, is_key);
    return ReadBare(is_key);
  }

  // A quote closes the string only when the next non-blank character could
  // legally follow it; otherwise it is kept as literal text.
  bool ClosesString(size_t quote_pos, bool is_key) const {
    size_t p = quote_pos + 1;
    while (p < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[p]))) {
      ++p;
    }
    if (p >= text_.size()) return true;
    char next = text_[p];
    return is_key ? next == ':' : (next == ',' || next == '}');
  }

  std::string ReadQuoted(char quote, bool is_key) {
    size_t start = pos_;
    ++pos_;
    std::string out;
    for (;;) {
      if (AtEnd()) {
        pos_ = start;
        Fail("unterminated string");
      }
      char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        char e = text_[pos_ + 1];
        pos_ += 2;
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          case '\\': out.push_back('\\'); break;
          case '\'': out.push_back('\''); break;
          case '"': out.push_back('"'); break;
          case '/': out.push_back('/'); break;
          case 'u': ReadUnicodeEscape(&out); break;
          default:
            out.push_back('\\');
            out.push_back(e);
        }
        continue;
      }
      if (c == quote) {
        if (ClosesString(pos_, is_key)) {
          ++pos_;
          return out;
        }
        findings_->push_back({FindingKind::kRepairedQuote,
                              "at offset " + std::to_string(pos_)});
      }
      out.push_back(c);
      ++pos_;
    }
  }

  void ReadUnicodeEscape(std::string *out) {
    auto hex4 = [&](size_t at, uint32_t *cp) {
      if (at + 4 > text_.size()) return false;
      uint32_t v = 0;
      for (size_t i = at; i < at + 4; ++i) {
        char h = text_[i];
        v <<= 4;
        if (h >= '0' && h <= '9') v |= h - '0';
        else if (h >= 'a' && h <= 'f') v |= h - 'a' + 10;
        else if (h >= 'A' && h <= 'F') v |= h - 'A' + 10;
        else return false;
      }
      *cp = v;
      return true;
    };
    uint32_t cp = 0;
    if (!hex4(pos_, &cp)) Fail("bad \\u escape");
    pos_ += 4;
    if (cp >= 0xD800 && cp <= 0xDBFF) {
      uint32_t low = 0;
      if (pos_ + 1 < text_.size() && text_[pos_] == '\\' &&
          text_[pos_ + 1] == 'u' && hex4(pos_ + 2, &low) && low >= 0xDC00 &&
          low <= 0xDFFF) {
        pos_ += 6;
        cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
      }
    }
    AppendUtf8(cp, out);
  }

  std::string ReadBare(bool is_key) {
    size_t start = pos_;
    while (!AtEnd()) {
      char c = Peek();
      if (c == ',' || c == '}' || (is_key && c == ':')) break;
      ++pos_;
    }
    std::string token = Trim(text_.substr(start, pos_ - start));
    if (token.empty()) {
      pos_ = start;
      Fail(is_key ? "missing key" : "missing value");
    }
    if (!is_key && (token == "None" || token == "null")) {
      findings_->push_back({FindingKind::kBareValue,
                            "bare " + token + " read as 'None'"});
      return std::string(kNoneValue);
    }
    findings_->push_back({FindingKind::kBareValue,
                          "unquoted " + std::string(is_key ? "key" : "value") +
                              " '" + token + "'"});
    return token;
  }

  std::string_view text_;
  size_t pos_;
  std::vector<Finding> *findings_;
};

// Only the first response block counts; the rest is reported.
void CheckAfterResponse(std::string_view after, const TagGrammar &grammar,
                        std::vector<Finding> &diag) {
  size_t second = after.find(grammar.open_response);
  if (second != std::string_view::npos) {
    diag.push_back({FindingKind::kMultipleBlocks, "second response block"});
  }
  if (!IsBlank(after.substr(0, second))) {
    diag.push_back({FindingKind::kStrayText, "text after response block"});
  }
}

}  // namespace

std::string_view FindingKindName(FindingKind kind) {
  switch (kind) {
    case FindingKind::kTagImbalance: return "tag_imbalance";
    case FindingKind::kMissingResponse: return "missing_response";
    case FindingKind::kMultipleBlocks: return "multiple_blocks";
    case FindingKind::kStrayText: return "stray_text";
    case FindingKind::kProseStripped: return "prose_stripped";
    case FindingKind::kTrailingComma: return "trailing_comma";
    case FindingKind::kBareValue: return "bare_value";
    case FindingKind::kRepairedQuote: return "repaired_quote";
    case FindingKind::kDuplicateKey: return "duplicate_key";
    case FindingKind::kMalformed: return "malformed";
  }
  return "unknown";
}

std::string_view GenerationModeName(GenerationMode mode) {
  switch (mode) {
    case GenerationMode::kRegular: return "regular";
    case GenerationMode::kReasoning: return "reasoning";
    case GenerationMode::kMalformed: return "malformed";
  }
  return "malformed";
}

std::optional<TaggedBlock> ExtractTagged(std::string_view text,
                                         const TagGrammar &grammar,
                                         TagName tag,
                                         std::vector<Finding> *findings) {
  const std::string &open =
      tag == TagName::kThink ? grammar.open_think : grammar.open_response;
  const std::string &close =
      tag == TagName::kThink ? grammar.close_think : grammar.close_response;
  size_t open_at = text.find(open);
  if (open_at == std::string_view::npos) return std::nullopt;

  TaggedBlock block;
  block.inner_begin = open_at + open.size();
  size_t close_at = text.find(close, block.inner_begin);
  size_t close_len = close.size();
  std::string alt = BackslashClose(close);
  size_t alt_at = text.find(alt, block.inner_begin);
  if (alt_at < close_at) {
    close_at = alt_at;
    close_len = alt.size();
  }
  if (close_at == std::string_view::npos) {
    block.inner_end = text.size();
    block.block_end = text.size();
    block.closed = false;
    if (findings != nullptr) {
      findings->push_back({FindingKind::kTagImbalance, "unclosed " + open});
    }
  } else {
    block.inner_end = close_at;
    block.block_end = close_at + close_len;
    block.closed = true;
  }
  block.inner = std::string(
      text.substr(block.inner_begin, block.inner_end - block.inner_begin));
  return block;
}

SlotDictParse ParseSlotDict(std::string_view text) {
  SlotDictParse result;
  size_t open = text.find('{');
  if (open == std::string_view::npos) {
    throw Error(ErrorCode::kNoDictFound, "no '{' in text");
  }
  DictReader reader(text, open + 1, &result.findings);
  result.slots = reader.Read();
  if (!IsBlank(text.substr(0, open))) {
    result.findings.push_back(
        {FindingKind::kProseStripped, "text before the dict"});
  }
  if (!IsBlank(text.substr(reader.pos()))) {
    result.findings.push_back(
        {FindingKind::kProseStripped, "text after the dict"});
  }
  return result;
}

ParsedGeneration ParseGeneration(std::string_view text,
                                 const TagGrammar &grammar) {
  ParsedGeneration parsed;
  std::vector<Finding> &diag = parsed.diagnostics;
  std::string_view dict_text = text;

  auto think = ExtractTagged(text, grammar, TagName::kThink, &diag);
  if (think) {
    parsed.mode = GenerationMode::kReasoning;
    size_t rest_begin = think->block_end;
    if (!think->closed) {
      // An unclosed think block ends where a response block starts.
      size_t response_at = text.find(grammar.open_response, think->inner_begin);
      if (response_at != std::string_view::npos) {
        think->inner = std::string(
            text.substr(think->inner_begin, response_at - think->inner_begin));
        rest_begin = response_at;
      }
    }
    parsed.thinking = Trim(think->inner);
    std::string_view rest = text.substr(rest_begin);
    if (rest.find(grammar.open_think) != std::string_view::npos) {
      diag.push_back({FindingKind::kMultipleBlocks, "second think block"});
    }
    auto response = ExtractTagged(rest, grammar, TagName::kResponse, &diag);
    if (response) {
      if (!IsBlank(rest.substr(0, response->inner_begin -
                                      grammar.open_response.size()))) {
        diag.push_back({FindingKind::kStrayText,
                        "text between think and response blocks"});
      }
      CheckAfterResponse(rest.substr(response->block_end), grammar, diag);
      dict_text = rest.substr(response->inner_begin,
                              response->inner_end - response->inner_begin);
    } else {
      diag.push_back({FindingKind::kMissingResponse,
                      "parsed the text after the think block"});
      dict_text = rest;
    }
  } else {
    parsed.mode = GenerationMode::kRegular;
    auto response = ExtractTagged(text, grammar, TagName::kResponse, &diag);
    if (response) {
      CheckAfterResponse(text.substr(response->block_end), grammar, diag);
      dict_text = text.substr(response->inner_begin,
                              response->inner_end - response->inner_begin);
    }
  }

  try {
    SlotDictParse dict = ParseSlotDict(dict_text);
    parsed.slot_values = std::move(dict.slots);
    diag.insert(diag.end(), dict.findings.begin(), dict.findings.end());
  } catch (const Error &e) {
    parsed.mode = GenerationMode::kMalformed;
    parsed.slot_values = SlotMap();
    diag.push_back({FindingKind::kMalformed, e.what()});
  }
  return parsed;
}

}  // namespace slotforge
