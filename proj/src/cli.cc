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

#include "slotforge/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slotforge/adapter_sim.h"
#include "slotforge/annotator.h"
#include "slotforge/config.h"
#include "slotforge/corpus.h"
#include "slotforge/dataset.h"
#include "slotforge/evaluate.h"
#include "slotforge/io.h"
#include "slotforge/report.h"

extern char **environ;

namespace slotforge {

namespace {

using nlohmann::ordered_json;

struct GlobalOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out;
  std::string format;
  bool verbose = false;
  std::vector<std::string> sets;
};

struct Context {
  GlobalOptions global;
  std::map<std::string, std::string> environment;
  std::ostream &out;
  std::ostream &err;

  ResolvedConfig Config() const {
    ConfigSources sources;
    if (!global.config_path.empty()) sources.toml_path = global.config_path;
    sources.environment = environment;
    for (const std::string &assignment : global.sets) {
      size_t eq = assignment.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorCode::kInvalidConfig,
                    "--set expects key=value, got '" + assignment + "'");
      }
      sources.flags[assignment.substr(0, eq)] = assignment.substr(eq + 1);
    }
    if (global.seed) sources.flags["forge.master_seed"] = std::to_string(*global.seed);
    ResolvedConfig resolved = ResolveConfig(sources);
    if (global.verbose) err << "effective config:\n" << resolved.Describe();
    return resolved;
  }

  std::filesystem::path RequireOut(const char *command) const {
    if (global.out.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(command) + " needs --out");
    }
    return global.out;
  }
};

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// ---------------------------------------------------------------- forge

int CmdForge(Context &ctx, const std::string &kind_name,
             const std::string &corpus_path, int jobs) {
  ForgeKind kind = kind_name == "regular"     ? ForgeKind::kRegular
                   : kind_name == "reasoning" ? ForgeKind::kReasoning
                                              : ForgeKind::kHybrid;
  ResolvedConfig resolved = ctx.Config();
  std::filesystem::path out_path = ctx.RequireOut("forge");
  std::vector<Call> calls = LoadCorpus(corpus_path);
  ForgeOptions options;
  options.jobs = jobs;
  std::vector<InstructionExample> examples =
      ForgeDataset(calls, resolved.config.forge, kind, options);
  WriteDataset(out_path, examples);

  size_t turns = 0;
  for (const Call &c : calls) turns += c.turns.size();
  ForgeStats stats = SummarizeDataset(examples);
  ctx.out << "forged " << examples.size() << " " << ForgeKindName(kind)
          << " examples from " << calls.size() << " calls / " << turns
          << " turns -> " << out_path.string() << "\n";
  for (const auto &[name, count] : stats.by_case) {
    ctx.out << "  case " << name << ": " << count << "\n";
  }
  for (const auto &[name, count] : stats.by_mode) {
    ctx.out << "  mode " << name << ": " << count << "\n";
  }
  ctx.out << "  distractor shortfalls: " << stats.shortfalls << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- parse

ordered_json ParsedToJson(const std::string &id, const ParsedGeneration &p) {
  ordered_json node;
  node["id"] = id;
  node["mode"] = GenerationModeName(p.mode);
  node["thinking"] = p.thinking ? ordered_json(*p.thinking) : ordered_json();
  ordered_json slots = ordered_json::object();
  for (const auto &[label, value] : p.slot_values) slots[label] = value;
  node["slots"] = std::move(slots);
  ordered_json diags = ordered_json::array();
  for (const Finding &f : p.diagnostics) {
    diags.push_back({{"kind", FindingKindName(f.kind)}, {"detail", f.detail}});
  }
  node["diagnostics"] = std::move(diags);
  return node;
}

int CmdParse(Context &ctx, const std::string &pred_path) {
  ctx.Config();
  std::vector<Prediction> predictions = LoadPredictions(pred_path);
  std::map<std::string, int> modes;
  int diagnostics = 0;
  std::string body;
  for (const Prediction &p : predictions) {
    ParsedGeneration parsed = ParseGeneration(p.generation);
    ++modes[std::string(GenerationModeName(parsed.mode))];
    diagnostics += static_cast<int>(parsed.diagnostics.size());
    body += ParsedToJson(p.id, parsed).dump() + "\n";
  }
  if (ctx.global.out.empty()) {
    ctx.out << body;
  } else {
    WriteFileAtomic(ctx.global.out, body);
  }
  std::ostream &summary = ctx.global.out.empty() ? ctx.err : ctx.out;
  summary << "parsed " << predictions.size() << " generations:";
  for (const auto &[mode, count] : modes) summary << " " << mode << "=" << count;
  summary << " diagnostics=" << diagnostics << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- score

int CmdScore(Context &ctx, const std::string &gold_path,
             const std::string &pred_path) {
  ResolvedConfig resolved = ctx.Config();
  std::vector<InstructionExample> gold = LoadDataset(gold_path);
  std::vector<Prediction> predictions = LoadPredictions(pred_path);
  Evaluation eval = Evaluate(gold, predictions, resolved.config.metrics);
  if (!eval.missing.empty()) {
    ctx.err << "warning: " << eval.missing.size()
            << " gold example(s) have no prediction and score as malformed";
    for (size_t i = 0; i < std::min<size_t>(5, eval.missing.size()); ++i) {
      ctx.err << (i ? ", " : ": ") << eval.missing[i];
    }
    ctx.err << (eval.missing.size() > 5 ? ", ...\n" : "\n");
  }
  const ScoreReport &r = eval.report;
  std::string json = ReportToJson(r).dump(2) + "\n";
  if (!ctx.global.out.empty()) WriteFileAtomic(ctx.global.out, json);
  if (ctx.global.format == "json") {
    ctx.out << json;
  } else {
    ctx.out << "P=" << Fixed(r.precision, 4) << " R=" << Fixed(r.recall, 4)
            << " F1=" << Fixed(r.f1, 4) << " (tp=" << r.tp << " fp=" << r.fp
            << " fn=" << r.fn << ", " << r.n_examples << " examples, "
            << r.n_malformed << " malformed)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- report

ScoreReport LoadReport(const std::string &path) {
  try {
    return ReportFromJson(ordered_json::parse(ReadFile(path)));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedLine, path + ": " + e.what());
  }
}

int CmdReport(Context &ctx, const std::string &base_path,
              const std::string &new_path, const std::string &label,
              const std::string &mode_name, std::string base_id,
              std::string new_id) {
  ctx.Config();
  std::string format_name =
      ctx.global.format.empty() ? "markdown" : ctx.global.format;
  auto format = ParseTableFormat(format_name);
  if (!format) {
    throw Error(ErrorCode::kInvalidArgument,
                "--format must be markdown, csv or json for report");
  }
  auto mode = ParseRunMode(mode_name);
  if (!mode) {
    throw Error(ErrorCode::kInvalidArgument, "unknown run mode " + mode_name);
  }
  if (base_id.empty()) base_id = std::filesystem::path(base_path).stem().string();
  if (new_id.empty()) new_id = std::filesystem::path(new_path).stem().string();
  if (base_id == new_id) {
    base_id += "#base";
    new_id += "#new";
  }
  RunRecord base{base_id, label, *mode, LoadReport(base_path)};
  RunRecord updated{new_id, label, *mode, LoadReport(new_path)};
  ComparisonRow row = CompareRuns(base, updated);
  std::string table = RenderTable(std::span(&row, 1), *format);
  if (ctx.global.out.empty()) {
    ctx.out << table;
  } else {
    WriteFileAtomic(ctx.global.out, table);
    ctx.out << "delta_f1=" << Fixed(row.delta_f1, 2) << " -> "
            << ctx.global.out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------- adapter-check

// Straight loops, independent of the Eigen path.
FrameMatrix LoopMlpForward(const FrameMatrix &x, const AdapterParams &p,
                           Activation activation) {
  const Eigen::Index m = x.rows(), d_in = p.w1.rows(), h = p.w1.cols(),
                     d_out = p.w2.cols();
  FrameMatrix out(m, d_out);
  std::vector<double> hidden(h);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index j = 0; j < h; ++j) {
      double acc = p.b1(j);
      for (Eigen::Index i = 0; i < d_in; ++i) acc += x(r, i) * p.w1(i, j);
      switch (activation) {
        case Activation::kGelu:
          acc = 0.5 * acc * std::erfc(-acc / std::sqrt(2.0));
          break;
        case Activation::kTanh:
          acc = std::tanh(acc);
          break;
        case Activation::kIdentity:
          break;
      }
      hidden[j] = acc;
    }
    for (Eigen::Index k = 0; k < d_out; ++k) {
      double acc = p.b2(k);
      for (Eigen::Index j = 0; j < h; ++j) acc += hidden[j] * p.w2(j, k);
      out(r, k) = acc;
    }
  }
  return out;
}

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

int CmdAdapterCheck(Context &ctx) {
  ResolvedConfig resolved = ctx.Config();
  const AdapterConfig cfg = resolved.config.adapter;
  cfg.Validate();
  const uint64_t seed = resolved.config.forge.master_seed;
  const int k = cfg.stack_factor;
  std::vector<CheckRow> rows;
  ordered_json sweep = ordered_json::array();

  // Shape law over N = 1..64.
  AdapterParams params = RandomAdapterParams(cfg, seed);
  bool sweep_ok = true;
  int expected_failures = 0;
  std::ostringstream table;
  table << "   N  rows  expected  status\n";
  for (int n = 1; n <= 64; ++n) {
    const int expected =
        cfg.pad_policy == PadPolicy::kZeroPad ? (n + k - 1) / k : n / k;
    std::string status;
    int got = -1;
    try {
      FrameMatrix y = AdapterForward(RandomFrames(n, cfg.d_enc, seed + n), cfg,
                                     params);
      got = static_cast<int>(y.rows());
      bool ok = expected > 0 && got == expected && y.cols() == cfg.d_llm &&
                y.allFinite();
      status = ok ? "ok" : "FAIL";
      sweep_ok &= ok;
    } catch (const Error &e) {
      bool ok = expected == 0 && e.code() == ErrorCode::kDegenerateOutput;
      status = ok ? "expected DegenerateOutput" : "FAIL " + std::string(e.what());
      expected_failures += ok;
      sweep_ok &= ok;
    }
    char line[128];
    std::snprintf(line, sizeof(line), "%4d  %4d  %8d  %s\n", n, got, expected,
                  status.c_str());
    table << line;
    sweep.push_back({{"n", n}, {"rows", got}, {"expected", expected},
                     {"status", status}});
  }
  rows.push_back({"shape law N=1..64", sweep_ok,
                  expected_failures
                      ? std::to_string(expected_failures) +
                            " expected DegenerateOutput entries"
                      : "rows = " +
                            std::string(cfg.pad_policy == PadPolicy::kZeroPad
                                            ? "ceil"
                                            : "floor") +
                            "(N/" + std::to_string(k) + ")"});

  {
    const int frames = cfg.OutputFrames(100);
    rows.push_back({"100 encoder frames", frames >= 1,
                    std::to_string(frames) + " adapter frames (" +
                        Fixed(100.0 / std::max(frames, 1), 2) +
                        "x fewer, " + Fixed(200.0 / std::max(frames, 1), 2) +
                        "x from the audio frame rate)"});
  }

  // Gradient checks on small seeded instances.
  for (Activation act : {cfg.activation, Activation::kIdentity}) {
    double worst = 0.0;
    std::string where;
    for (uint64_t s = 1; s <= 3; ++s) {
      AdapterParams small = RandomAdapterParams(8, 5, 4, seed * 31 + s);
      GradCheckResult g =
          GradCheck(small, RandomFrames(3, 8, seed * 37 + s), act, 1e-5);
      if (g.max_relative_error >= worst) {
        worst = g.max_relative_error;
        where = g.worst_tensor + "[" + std::to_string(g.worst_index) + "]";
      }
    }
    const double limit = act == Activation::kIdentity ? 1e-6 : 1e-4;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max relative error %.3e at %s (limit %.0e)", worst,
                  where.c_str(), limit);
    rows.push_back({"grad check " + std::string(ActivationName(act)),
                    worst < limit, detail});
    if (act == Activation::kIdentity && cfg.activation == act) break;
  }

  // Eigen path against the loop path.
  {
    AdapterParams small = RandomAdapterParams(8, 5, 4, seed + 101);
    FrameMatrix x = RandomFrames(3, 8, seed + 103);
    double diff = (MlpForward(x, small, cfg.activation) -
                   LoopMlpForward(x, small, cfg.activation))
                      .cwiseAbs()
                      .maxCoeff();
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max |diff| %.3e (limit 1e-12)",
                  diff);
    rows.push_back({"dual forward", diff < 1e-12, detail});
  }

  // Time locality and padding on a narrow adapter with the same k.
  {
    AdapterConfig narrow = cfg;
    narrow.d_enc = 3;
    narrow.d_hidden = 5;
    narrow.d_llm = 4;
    AdapterParams p = RandomAdapterParams(narrow, seed + 7);
    const int n = 3 * k + (k > 1 ? 1 : 0);
    FrameMatrix x = RandomFrames(n, narrow.d_enc, seed + 11);
    FrameMatrix base = AdapterForward(x, narrow, p);
    bool local = true;
    for (int t = 0; t < n; ++t) {
      FrameMatrix moved = x;
      moved.row(t).array() += 0.5;
      if (t / k >= base.rows()) continue;  // dropped by truncation
      FrameMatrix y = AdapterForward(moved, narrow, p);
      for (Eigen::Index r = 0; r < y.rows(); ++r) {
        bool changed = (y.row(r) - base.row(r)).cwiseAbs().maxCoeff() > 0.0;
        local &= changed == (r == t / k);
      }
    }
    rows.push_back({"time locality", local,
                    "perturbing frame t moves only row t/" + std::to_string(k)});
    if (cfg.pad_policy == PadPolicy::kZeroPad && n % k != 0) {
      FrameMatrix padded = FrameMatrix::Zero(n + (k - n % k), narrow.d_enc);
      padded.topRows(n) = x;
      double diff =
          (AdapterForward(padded, narrow, p) - base).cwiseAbs().maxCoeff();
      rows.push_back({"zero padding", diff == 0.0,
                      "explicit zero frames reproduce the padded output"});
    }
  }

  bool all = std::all_of(rows.begin(), rows.end(),
                         [](const CheckRow &r) { return r.pass; });
  if (ctx.global.format == "json") {
    ordered_json report;
    report["config"] = {{"d_enc", cfg.d_enc},
                        {"stack_factor", cfg.stack_factor},
                        {"d_hidden", cfg.d_hidden},
                        {"d_llm", cfg.d_llm},
                        {"pad_policy", PadPolicyName(cfg.pad_policy)},
                        {"activation", ActivationName(cfg.activation)}};
    report["shape_sweep"] = sweep;
    ordered_json checks = ordered_json::array();
    for (const CheckRow &r : rows) {
      checks.push_back(
          {{"check", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    report["checks"] = checks;
    report["pass"] = all;
    ctx.out << report.dump(2) << "\n";
  } else {
    ctx.out << "adapter d_enc=" << cfg.d_enc << " k=" << k
            << " d_hidden=" << cfg.d_hidden << " d_llm=" << cfg.d_llm << " "
            << PadPolicyName(cfg.pad_policy) << " "
            << ActivationName(cfg.activation) << "\n\n"
            << table.str() << "\n";
    for (const CheckRow &r : rows) {
      ctx.out << (r.pass ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail
              << "\n";
    }
  }
  return all ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------- annotate

ordered_json FindingToJson(const AnnotationFinding &f) {
  return {{"kind", AnnotationFindingKindName(f.kind)},
          {"turn", f.turn},
          {"label", f.label},
          {"detail", f.detail}};
}

struct CheckpointEntry {
  bool ok = false;
  std::string line;  // as stored
  std::optional<Call> call;
  std::map<std::string, int> findings;
};

std::map<std::string, CheckpointEntry> ReadCheckpoint(
    const std::filesystem::path &path) {
  std::map<std::string, CheckpointEntry> entries;
  if (!std::filesystem::exists(path)) return entries;
  std::istringstream in(ReadFile(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ordered_json node;
    try {
      node = ordered_json::parse(line);
    } catch (const nlohmann::json::exception &) {
      continue;  // torn final line from an interrupted run
    }
    CheckpointEntry entry;
    entry.line = line;
    entry.ok = node.value("status", "") == "ok";
    if (entry.ok) entry.call = ParseCallRecord(node.at("call").dump());
    for (const auto &f : node.value("findings", ordered_json::array())) {
      ++entry.findings[f.value("kind", "")];
    }
    entries[node.at("call_id").get<std::string>()] = std::move(entry);
  }
  return entries;
}

int CmdAnnotate(Context &ctx, const std::string &corpus_path,
                const std::string &script_path) {
  ResolvedConfig resolved = ctx.Config();
  const AnnotateSettings &settings = resolved.config.annotate;
  std::filesystem::path out_path = ctx.RequireOut("annotate");
  std::filesystem::path checkpoint = out_path;
  checkpoint += ".checkpoint.jsonl";

  std::vector<Call> calls = LoadCorpus(corpus_path);
  MockCompletionClient client = MockCompletionClient::FromFile(script_path);
  std::map<std::string, CheckpointEntry> done = ReadCheckpoint(checkpoint);

  std::vector<Call> pending;
  int resumed = 0;
  for (const Call &c : calls) {
    auto it = done.find(c.call_id);
    if (it != done.end() && it->second.ok) {
      ++resumed;
    } else {
      pending.push_back(c);
    }
  }

  std::ofstream log(checkpoint, std::ios::app);
  if (!log) {
    throw Error(ErrorCode::kIo, "cannot open checkpoint " + checkpoint.string());
  }
  RetryPolicy retry;
  retry.max_retries = settings.max_retries;
  auto record = [&](const AnnotationOutcome &o) {
    ordered_json node;
    node["call_id"] = o.call_id;
    node["status"] = o.ok ? "ok" : "failed";
    if (o.ok) {
      node["call"] = ordered_json::parse(SerializeCall(o.result.call));
      ordered_json findings = ordered_json::array();
      for (const AnnotationFinding &f : o.result.findings) {
        findings.push_back(FindingToJson(f));
      }
      node["findings"] = findings;
    } else {
      node["error"] = o.message;
    }
    log << node.dump() << "\n" << std::flush;
  };
  std::vector<AnnotationOutcome> outcomes =
      AnnotateCorpus(pending, client, retry, settings.max_in_flight,
                     DefaultDenylist(), record);
  log.close();
  done = ReadCheckpoint(checkpoint);

  int failed = 0;
  bool external = false;
  for (const AnnotationOutcome &o : outcomes) {
    if (o.ok) continue;
    ++failed;
    external |= ExitCodeFor(o.error) == kExitExternalFailure;
    ctx.err << "failed " << o.call_id << ": " << o.message << "\n";
  }
  std::map<std::string, int> finding_counts;
  for (const auto &[id, entry] : done) {
    for (const auto &[kind, n] : entry.findings) finding_counts[kind] += n;
  }
  ctx.out << "annotated " << (outcomes.size() - failed) << " calls, resumed "
          << resumed << ", failed " << failed << " (client requests "
          << client.requests() << ")\n";
  for (const auto &[kind, n] : finding_counts) {
    ctx.out << "  finding " << kind << ": " << n << "\n";
  }
  if (failed > 0) {
    ctx.err << "partial results kept in " << checkpoint.string()
            << "; rerun to resume\n";
    return external ? kExitExternalFailure : kExitInputError;
  }
  std::vector<Call> annotated;
  for (const Call &c : calls) annotated.push_back(*done.at(c.call_id).call);
  WriteCorpus(out_path, annotated);
  ctx.out << "wrote " << out_path.string() << "\n";
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTransportError:
    case ErrorCode::kUnparseableAnnotation:
      return kExitExternalFailure;
    default:
      return kExitInputError;
  }
}

std::map<std::string, std::string> ProcessEnvironment() {
  std::map<std::string, std::string> env;
  for (char **e = environ; e && *e; ++e) {
    std::string_view entry(*e);
    if (!entry.starts_with("SLOTFORGE_")) continue;
    size_t eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    env[std::string(entry.substr(0, eq))] = std::string(entry.substr(eq + 1));
  }
  return env;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err,
           const std::map<std::string, std::string> &environment) {
  Context ctx{{}, environment, out, err};
  GlobalOptions &g = ctx.global;

  CLI::App app{"Slot-filling instruction data forge and evaluator",
               "slotforge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", g.config_path, "TOML config file");
  app.add_option("--seed", g.seed, "master seed (forge.master_seed)");
  app.add_option("--out", g.out, "output path");
  app.add_option("--format", g.format,
                 "output format: markdown, csv or json (report); json for "
                 "score and adapter-check");
  app.add_flag("-v,--verbose", g.verbose, "print the effective config");
  app.add_option("--set", g.sets, "config override key=value (repeatable)");

  std::string corpus, script, kind, gold, pred, base, updated;
  std::string label = "model", mode = "regular", base_id, new_id;
  int jobs = 1;

  CLI::App *annotate = app.add_subcommand("annotate", "annotate a corpus");
  annotate->add_option("--corpus", corpus, "corpus JSON Lines")->required();
  annotate->add_option("--mock-script", script,
                       "scripted completions (JSON Lines)")
      ->required();

  CLI::App *forge = app.add_subcommand("forge", "forge an instruction dataset");
  forge->add_option("kind", kind, "regular, reasoning or hybrid")
      ->required()
      ->check(CLI::IsMember({"regular", "reasoning", "hybrid"}));
  forge->add_option("--corpus", corpus, "corpus JSON Lines")->required();
  forge->add_option("--jobs", jobs, "worker threads")
      ->check(CLI::PositiveNumber);

  CLI::App *parse = app.add_subcommand("parse", "parse model generations");
  parse->add_option("--pred", pred, "predictions JSON Lines")->required();

  CLI::App *score = app.add_subcommand("score", "score predictions");
  score->add_option("--gold", gold, "forged dataset")->required();
  score->add_option("--pred", pred, "predictions JSON Lines")->required();

  CLI::App *report = app.add_subcommand("report", "compare two score reports");
  report->add_option("--base", base, "baseline score report")->required();
  report->add_option("--new", updated, "new score report")->required();
  report->add_option("--label", label, "foundation label");
  report->add_option("--mode", mode,
                     "regular, reasoning, hybrid_regular or hybrid_reasoning");
  report->add_option("--base-id", base_id, "baseline run id");
  report->add_option("--new-id", new_id, "new run id");

  CLI::App *adapter =
      app.add_subcommand("adapter-check", "validate the adapter model");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*annotate) return CmdAnnotate(ctx, corpus, script);
    if (*forge) return CmdForge(ctx, kind, corpus, jobs);
    if (*parse) return CmdParse(ctx, pred);
    if (*score) return CmdScore(ctx, gold, pred);
    if (*report) {
      return CmdReport(ctx, base, updated, label, mode, base_id, new_id);
    }
    if (*adapter) return CmdAdapterCheck(ctx);
  } catch (const CorpusError &e) {
    for (const CorpusIssue &issue : e.issues()) {
      err << "error: line " << issue.line << ": "
          << ErrorCodeName(issue.code) << ": " << issue.cause << "\n";
    }
    return kExitInputError;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace slotforge
