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

#include "slotforge/report.h"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "slotforge/errors.h"

namespace slotforge {

namespace {

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, RoundTo(value, decimals));
  std::string s(buf);
  if (s.starts_with("-") && std::stod(s) == 0.0) s.erase(0, 1);  // no "-0.00"
  return s;
}

std::string Signed(double value) {
  std::string s = Fixed(value, 2);
  return s.starts_with("-") ? s : "+" + s;
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MarkdownCell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

}  // namespace

double RoundTo(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // Nudge by a few ulps so values printed as ...5 round away from zero.
  double scaled = value * scale;
  scaled = std::nextafter(scaled, scaled >= 0 ? INFINITY : -INFINITY);
  return std::round(scaled) / scale;
}

double RelativeGain(double f1_new, double f1_base) {
  const double base = RoundTo(f1_base, 4);
  const double updated = RoundTo(f1_new, 4);
  if (!(base > 0.0)) {
    throw Error(ErrorCode::kZeroBaseline,
                "baseline F1 " + Fixed(f1_base, 4) + " is not positive");
  }
  return RoundTo(100.0 * (updated / base - 1.0), 2);
}

std::string_view RunModeName(RunMode mode) {
  switch (mode) {
    case RunMode::kRegular: return "regular";
    case RunMode::kReasoning: return "reasoning";
    case RunMode::kHybridRegular: return "hybrid_regular";
    case RunMode::kHybridReasoning: return "hybrid_reasoning";
  }
  return "regular";
}

std::optional<RunMode> ParseRunMode(std::string_view name) {
  for (RunMode m : {RunMode::kRegular, RunMode::kReasoning,
                    RunMode::kHybridRegular, RunMode::kHybridReasoning}) {
    if (RunModeName(m) == name) return m;
  }
  return std::nullopt;
}

ComparisonRow CompareRuns(const RunRecord &base, const RunRecord &updated) {
  if (!(base.report.match_config == updated.report.match_config)) {
    throw Error(ErrorCode::kIncomparableConfigs,
                "runs " + base.run_id + " and " + updated.run_id +
                    " were scored with different match configs");
  }
  if (!base.run_id.empty() && base.run_id == updated.run_id) {
    throw Error(ErrorCode::kInvalidArgument,
                "run id " + base.run_id + " appears twice");
  }
  ComparisonRow row;
  row.foundation_label = updated.foundation_label;
  row.mode = updated.mode;
  row.base_run = base.run_id;
  row.new_run = updated.run_id;
  row.base = {base.report.precision, base.report.recall, base.report.f1};
  row.updated = {updated.report.precision, updated.report.recall,
                 updated.report.f1};
  row.delta_f1 = RelativeGain(updated.report.f1, base.report.f1);
  return row;
}

std::string_view TableFormatName(TableFormat format) {
  switch (format) {
    case TableFormat::kMarkdown: return "markdown";
    case TableFormat::kCsv: return "csv";
    case TableFormat::kJson: return "json";
  }
  return "markdown";
}

std::optional<TableFormat> ParseTableFormat(std::string_view name) {
  for (TableFormat f :
       {TableFormat::kMarkdown, TableFormat::kCsv, TableFormat::kJson}) {
    if (TableFormatName(f) == name) return f;
  }
  return std::nullopt;
}

std::string RenderTable(std::span<const ComparisonRow> rows,
                        TableFormat format) {
  static const char *kColumns[] = {"foundation", "mode",  "base_p", "base_r",
                                   "base_f1",    "new_p", "new_r",  "new_f1",
                                   "delta_f1"};
  std::string out;
  switch (format) {
    case TableFormat::kMarkdown: {
      out = "| Foundation | Mode | Base P | Base R | Base F1 | New P | New R | "
            "New F1 | ΔF1 (%) |\n"
            "|---|---|---:|---:|---:|---:|---:|---:|---:|\n";
      for (const ComparisonRow &r : rows) {
        out += "| " + MarkdownCell(r.foundation_label) + " | " +
               std::string(RunModeName(r.mode)) + " | " +
               Fixed(r.base.precision, 4) + " | " + Fixed(r.base.recall, 4) +
               " | " + Fixed(r.base.f1, 4) + " | " +
               Fixed(r.updated.precision, 4) + " | " +
               Fixed(r.updated.recall, 4) + " | " + Fixed(r.updated.f1, 4) +
               " | " + Signed(r.delta_f1) + " |\n";
      }
      return out;
    }
    case TableFormat::kCsv: {
      for (size_t i = 0; i < std::size(kColumns); ++i) {
        out += (i ? "," : "") + std::string(kColumns[i]);
      }
      out += "\n";
      for (const ComparisonRow &r : rows) {
        out += CsvField(r.foundation_label) + "," +
               std::string(RunModeName(r.mode)) + "," +
               Fixed(r.base.precision, 4) + "," + Fixed(r.base.recall, 4) +
               "," + Fixed(r.base.f1, 4) + "," + Fixed(r.updated.precision, 4) +
               "," + Fixed(r.updated.recall, 4) + "," + Fixed(r.updated.f1, 4) +
               "," + Fixed(r.delta_f1, 2) + "\n";
      }
      return out;
    }
    case TableFormat::kJson: {
      nlohmann::ordered_json table = nlohmann::ordered_json::array();
      for (const ComparisonRow &r : rows) {
        nlohmann::ordered_json row;
        row["foundation"] = r.foundation_label;
        row["mode"] = RunModeName(r.mode);
        row["base_run"] = r.base_run;
        row["new_run"] = r.new_run;
        row["base_p"] = RoundTo(r.base.precision, 4);
        row["base_r"] = RoundTo(r.base.recall, 4);
        row["base_f1"] = RoundTo(r.base.f1, 4);
        row["new_p"] = RoundTo(r.updated.precision, 4);
        row["new_r"] = RoundTo(r.updated.recall, 4);
        row["new_f1"] = RoundTo(r.updated.f1, 4);
        row["delta_f1"] = r.delta_f1;
        table.push_back(std::move(row));
      }
      return nlohmann::ordered_json{{"columns", kColumns}, {"rows", table}}
                 .dump(2) +
             "\n";
    }
  }
  return out;
}

}  // namespace slotforge
