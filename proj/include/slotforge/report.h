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

// Run-versus-run comparison tables with relative F1 gain.

#ifndef SLOTFORGE_REPORT_H_
#define SLOTFORGE_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "slotforge/slotmetrics.h"

namespace slotforge {

// Rounds to `decimals` places, half away from zero.
double RoundTo(double value, int decimals);

// 100 * (f1_new / f1_base - 1) with both F1 values first rounded to four
// decimals, the precision tables are printed with; the result is rounded to
// two decimals. Throws Error(kZeroBaseline) when the rounded baseline is 0.
double RelativeGain(double f1_new, double f1_base);

enum class RunMode { kRegular, kReasoning, kHybridRegular, kHybridReasoning };

std::string_view RunModeName(RunMode mode);
std::optional<RunMode> ParseRunMode(std::string_view name);

struct RunRecord {
  std::string run_id;
  std::string foundation_label;
  RunMode mode = RunMode::kRegular;
  ScoreReport report;
};

struct ScoreTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ComparisonRow {
  std::string foundation_label;
  RunMode mode = RunMode::kRegular;
  std::string base_run;
  std::string new_run;
  ScoreTriple base;
  ScoreTriple updated;
  double delta_f1 = 0.0;
};

// Throws Error(kIncomparableConfigs) when the runs were scored under
// different match configs, Error(kInvalidArgument) when run ids collide.
// Label and mode come from the new run.
ComparisonRow CompareRuns(const RunRecord &base, const RunRecord &updated);

enum class TableFormat { kMarkdown, kCsv, kJson };

std::string_view TableFormatName(TableFormat format);
std::optional<TableFormat> ParseTableFormat(std::string_view name);

// Columns: foundation, mode, base P/R/F1, new P/R/F1, delta_f1. P/R/F1 use
// four decimals and delta_f1 two; markdown signs the gain explicitly.
std::string RenderTable(std::span<const ComparisonRow> rows,
                        TableFormat format);

}  // namespace slotforge

#endif  // SLOTFORGE_REPORT_H_
