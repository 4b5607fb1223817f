// Copyright 2026 The UEval Authors.
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

#include "ueval/cli.h"

#include <algorithm>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ueval/correctness.h"
#include "ueval/elo.h"
#include "ueval/errors.h"
#include "ueval/judge.h"
#include "ueval/perturbation.h"
#include "ueval/records.h"
#include "ueval/report.h"
#include "ueval/riskmetrics.h"
#include "ueval/scorers.h"
#include "ueval/table.h"
#include "ueval/verification.h"

namespace ueval::cli {
namespace {

struct Io {
  std::ostream& out;
  std::ostream& err;
  bool quiet = false;
};

void Emit(const Table& table, const std::string& path, Io& io) {
  if (path.empty()) {
    io.out << FormatTable(table);
  } else {
    WriteTable(table, path);
  }
}

constexpr size_t kMaxWarningsShown = 20;

void ReportWarnings(const Diagnostics& diag, Io& io) {
  if (io.quiet) return;
  const size_t shown = std::min(diag.warnings.size(), kMaxWarningsShown);
  for (size_t i = 0; i < shown; ++i) io.err << "warning: " << diag.warnings[i] << '\n';
  if (diag.warnings.size() > shown) {
    io.err << "warning: ... " << diag.warnings.size() - shown
           << " more warning(s) suppressed\n";
  }
}

// ----------------------------------------------------------------- score

struct ScoreOptions {
  std::string records;
  std::vector<std::string> methods;
  double tau = 1.0;
  double alpha = 1e-3;
  std::string out;
};

void RunScore(const ScoreOptions& o, Io& io) {
  Diagnostics diag;
  const auto records = LoadRecords(o.records, &diag);
  std::vector<std::string> methods = o.methods;
  if (methods.empty()) {
    for (auto m : KnownMethods()) methods.emplace_back(m);
  }
  std::vector<scorers::ScorerConfig> configs;
  for (const auto& m : methods) configs.push_back(scorers::ConfigFromName(m, o.tau, o.alpha));
  const auto result = scorers::ScoreAll(records, configs);
  diag.Append(result.skipped);
  Emit(scorers::ScoresToTable(result.rows), o.out, io);
  ReportWarnings(diag, io);
  if (!io.quiet) {
    io.err << "scored " << result.rows.size() << " (record, method) pairs; skipped "
           << result.skipped.warnings.size() << '\n';
  }
}

// --------------------------------------------------------------- correct

struct CorrectOptions {
  std::string records;
  std::vector<std::string> metrics{"rouge1", "rouge2", "rougeL", "bleu4", "exact"};
  bool legacy_short_zero = false;
  std::string merge;
  std::string out;
};

void RunCorrect(const CorrectOptions& o, Io& io) {
  Diagnostics diag;
  const auto records = LoadRecords(o.records, &diag);
  std::vector<correctness::CorrectnessConfig> configs;
  for (const auto& m : o.metrics) {
    auto c = correctness::ParseColumnSpec(m);
    c.legacy_short_zero = o.legacy_short_zero;
    configs.push_back(c);
  }
  auto table = correctness::BuildCorrectnessTable(records, configs);
  if (!o.merge.empty()) {
    table = correctness::MergeTables(table, correctness::ReadCorrectnessTable(o.merge));
  }
  Emit(correctness::CorrectnessToTable(table), o.out, io);
  ReportWarnings(diag, io);
}

// ----------------------------------------------------------------- judge

struct JudgeOptions {
  std::string records;
  std::string judges;
  std::string cache_dir = "judge_cache";
  std::string merge;
  std::string verdicts_out;
  std::string out;
};

void RunJudge(const JudgeOptions& o, Io& io) {
  Diagnostics diag;
  const auto records = LoadRecords(o.records, &diag);
  const auto configs = judge::LoadJudgeConfigs(o.judges);
  judge::HttpJudgeTransport transport;
  const auto run = judge::QueryJudges(records, configs, o.cache_dir, transport);
  for (const auto& v : run.verdicts) {
    if (!v.error.empty()) {
      diag.Warn("judge " + v.judge_id + " record " + v.record_id + " sample " +
                std::to_string(v.sample_index) + ": " + v.error);
    }
  }
  auto table = judge::VerdictsToTable(records, configs, run.verdicts);
  if (!o.merge.empty()) {
    table = correctness::MergeTables(correctness::ReadCorrectnessTable(o.merge), table);
  }
  if (!o.verdicts_out.empty()) {
    std::string text;
    for (const auto& v : run.verdicts) text += judge::VerdictToLine(v) + "\n";
    WriteFile(o.verdicts_out, text);
  }
  Emit(correctness::CorrectnessToTable(table), o.out, io);
  ReportWarnings(diag, io);
  if (!io.quiet) {
    io.err << "verdicts: " << run.verdicts.size() << ", cache hits: " << run.stats.cache_hits
           << ", network calls: " << run.stats.network_calls
           << ", failures: " << run.stats.failures << '\n';
  }
}

// ------------------------------------------------------------------ eval

struct EvalOptions {
  std::string mode = "sp";
  std::string records;
  std::string scores;
  std::string correctness;
  std::vector<std::string> columns;
  std::vector<std::string> judge_columns;
  double threshold = 0.5;
  double entropy_threshold = -1.0;
  std::string cor = "spearman";
  std::vector<std::string> tags;
  std::string out;
  std::string xi_out;
};

struct Experiment {
  std::string dataset;
  std::string model;
  std::vector<const GenerationRecord*> records;
};

std::vector<Experiment> GroupExperiments(const std::vector<GenerationRecord>& records) {
  std::vector<Experiment> groups;
  for (const auto& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Experiment& g) {
      return g.dataset == r.dataset && g.model == r.model;
    });
    if (it == groups.end()) {
      groups.push_back({r.dataset, r.model, {}});
      it = groups.end() - 1;
    }
    it->records.push_back(&r);
  }
  return groups;
}

struct ScoreIndex {
  std::vector<std::string> methods;  // first-appearance order
  std::map<std::string, std::map<std::string, double>> by_record;

  std::optional<double> Find(const std::string& record, const std::string& method) const {
    auto r = by_record.find(record);
    if (r == by_record.end()) return std::nullopt;
    auto m = r->second.find(method);
    if (m == r->second.end()) return std::nullopt;
    return m->second;
  }
};

ScoreIndex IndexScores(const std::vector<scorers::ScoreRow>& rows) {
  ScoreIndex index;
  for (const auto& row : rows) {
    if (std::find(index.methods.begin(), index.methods.end(), row.method) == index.methods.end()) {
      index.methods.push_back(row.method);
    }
    index.by_record[row.record_id][row.method] = row.score;
  }
  return index;
}

std::vector<std::optional<int>> LookupColumn(const correctness::CorrectnessTable& table,
                                             const std::map<std::string, size_t>& rows,
                                             const std::string& column,
                                             const std::vector<const GenerationRecord*>& recs,
                                             double threshold) {
  const auto& values = table.Column(column);
  std::vector<std::optional<double>> raw;
  for (const auto* r : recs) {
    auto it = rows.find(r->id);
    raw.push_back(it == rows.end() ? std::nullopt : values[it->second]);
  }
  return risk::BinarizeColumn(raw, threshold);
}

void RunEval(const EvalOptions& o, Io& io) {
  Diagnostics diag;
  const auto records = LoadRecords(o.records, &diag);
  const ScoreIndex scores = IndexScores(scorers::ScoresFromTable(ReadTable(o.scores)));
  Indicator indicator;
  if (o.mode == "sp") {
    indicator = Indicator::kSp;
  } else if (o.mode == "sp-moji") {
    indicator = Indicator::kSpMoji;
  } else if (o.mode == "ood") {
    indicator = Indicator::kOod;
  } else if (o.mode == "perturb") {
    indicator = Indicator::kPerturb;
  } else {
    Fail(ErrorKind::kConfiguration, "unknown eval mode '" + o.mode + "'");
  }
  if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
    Fail(ErrorKind::kConfiguration, "threshold must lie in [0,1]");
  }
  risk::CorKind cor_kind;
  if (o.cor == "spearman") {
    cor_kind = risk::CorKind::kSpearman;
  } else if (o.cor == "pair_auroc") {
    cor_kind = risk::CorKind::kPairAuroc;
  } else {
    Fail(ErrorKind::kConfiguration, "unknown correlation kind '" + o.cor + "'");
  }

  correctness::CorrectnessTable table;
  std::map<std::string, size_t> row_of;
  std::vector<std::string> judge_columns = o.judge_columns;
  std::set<std::string> kept_ids;
  const bool needs_table = indicator == Indicator::kSp || indicator == Indicator::kSpMoji;
  if (needs_table) {
    if (o.correctness.empty()) Fail(ErrorKind::kConfiguration, "--correctness is required");
    table = correctness::ReadCorrectnessTable(o.correctness);
    for (size_t i = 0; i < table.record_ids.size(); ++i) row_of[table.record_ids[i]] = i;
    if (indicator == Indicator::kSp && o.columns.empty()) {
      Fail(ErrorKind::kConfiguration, "--columns is required for mode sp");
    }
    if (indicator == Indicator::kSpMoji) {
      if (judge_columns.empty()) {
        for (const auto& c : table.column_names) {
          if (c.starts_with("judge.")) judge_columns.push_back(c);
        }
      }
      if (judge_columns.empty()) Fail(ErrorKind::kConfiguration, "no judge columns found");
      if (o.entropy_threshold >= 0.0) {
        for (auto& id : correctness::FilterByEntropy(table, judge_columns, o.entropy_threshold)) {
          kept_ids.insert(std::move(id));
        }
      }
    }
  }

  const std::set<std::string> tags(o.tags.begin(), o.tags.end());
  std::vector<ExperimentResult> results;
  std::vector<report::XiEntry> xi_entries;
  for (const auto& g : GroupExperiments(records)) {
    for (const auto& method : scores.methods) {
      std::vector<const GenerationRecord*> recs;
      std::vector<double> u;
      for (const auto* r : g.records) {
        if (indicator == Indicator::kSpMoji && o.entropy_threshold >= 0.0 &&
            !kept_ids.contains(r->id)) {
          continue;
        }
        if (auto s = scores.Find(r->id, method)) {
          recs.push_back(r);
          u.push_back(*s);
        }
      }
      const std::string where = g.dataset + "/" + g.model + "/" + method;
      if (recs.size() < g.records.size()) {
        diag.Warn(where + ": " + std::to_string(g.records.size() - recs.size()) +
                  " record(s) without a score excluded");
      }
      if (recs.empty()) continue;
      std::vector<std::pair<std::string, double>> values;  // (xi column, value)
      Diagnostics cell;
      try {
        switch (indicator) {
          case Indicator::kSp:
            for (const auto& c : o.columns) {
              try {
                values.emplace_back(c, risk::XiSp(u, LookupColumn(table, row_of, c, recs,
                                                                  o.threshold), &cell));
              } catch (const Error& e) {
                if (e.kind() != ErrorKind::kUndefinedMetric) throw;
                cell.Warn("column " + c + ": " + e.what());
              }
            }
            break;
          case Indicator::kSpMoji: {
            std::vector<std::vector<std::optional<int>>> cols;
            for (const auto& c : judge_columns) {
              cols.push_back(LookupColumn(table, row_of, c, recs, o.threshold));
            }
            values.emplace_back("moji", risk::XiSpMoji(u, cols, &cell));
            break;
          }
          case Indicator::kOod: {
            std::vector<double> uu;
            std::vector<int> labels;
            for (size_t i = 0; i < recs.size(); ++i) {
              if (!recs[i]->ood_label) continue;
              uu.push_back(u[i]);
              labels.push_back(*recs[i]->ood_label);
            }
            values.emplace_back("ood", risk::OodAuroc(uu, labels));
            break;
          }
          case Indicator::kPerturb: {
            std::vector<std::string> bases;
            std::map<std::string, risk::PerturbSeries> series;
            for (size_t i = 0; i < recs.size(); ++i) {
              if (!recs[i]->perturbation_strength) continue;
              const std::string base = perturb::BaseId(recs[i]->id);
              if (!series.contains(base)) bases.push_back(base);
              series[base].emplace_back(*recs[i]->perturbation_strength, u[i]);
            }
            if (bases.empty()) continue;
            std::vector<risk::PerturbSeries> ordered;
            for (const auto& b : bases) ordered.push_back(series[b]);
            values.emplace_back("perturb", risk::XiPerturb(ordered, cor_kind, &cell));
            break;
          }
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kUndefinedMetric) throw;
        cell.Warn(e.what());
      }
      for (const auto& w : cell.warnings) diag.Warn(where + ": " + w);
      for (size_t k = 0; k < values.size(); ++k) {
        xi_entries.push_back({g.dataset, g.model, values[k].first, method, values[k].second});
      }
      if (!values.empty() &&
          (indicator != Indicator::kSp || values.front().first == o.columns.front())) {
        ExperimentResult r{method, g.dataset, g.model, indicator, values.front().second, tags};
        ValidateResult(r);
        results.push_back(std::move(r));
      }
    }
  }
  Emit(ResultsToTable(results), o.out, io);
  if (!o.xi_out.empty()) WriteTable(report::XiEntriesToTable(xi_entries), o.xi_out);
  ReportWarnings(diag, io);
}

// --------------------------------------------------------------- perturb

struct PerturbOptions {
  std::string records;
  std::vector<double> strengths = perturb::kDefaultStrengths;
  uint64_t seed = 0;
  std::string out;
};

void RunPerturb(const PerturbOptions& o, Io& io) {
  Diagnostics diag;
  const auto records = LoadRecords(o.records, &diag);
  std::vector<GenerationRecord> derived;
  for (const auto& r : records) {
    auto grid = perturb::GenerateGrid(r, o.strengths, o.seed);
    std::move(grid.begin(), grid.end(), std::back_inserter(derived));
  }
  if (o.out.empty()) {
    for (const auto& r : derived) io.out << RecordToLine(r) << '\n';
  } else {
    WriteRecords(o.out, derived);
  }
  ReportWarnings(diag, io);
}

// ------------------------------------------------------------------- elo

struct EloOptions {
  std::vector<std::string> results;
  std::vector<std::string> partitions{"all"};
  int64_t steps = 100000;
  uint64_t seed = 0;
  double k = 2.0;
  double scale = 400.0;
  int window = 1000;
  std::string out;
  std::string trace;
};

void RunElo(const EloOptions& o, Io& io) {
  std::vector<ExperimentResult> results;
  for (const auto& path : o.results) {
    auto part = ReadResults(path);
    std::move(part.begin(), part.end(), std::back_inserter(results));
  }
  elo::EloParams params;
  params.steps = o.steps;
  params.k = o.k;
  params.s = o.scale;
  params.window = o.window;
  const auto runs = elo::RunPartitions(results, o.partitions, params, o.seed);
  Emit(elo::RatingsToTable(runs), o.out, io);
  if (!o.trace.empty()) WriteTable(elo::TraceToTable(runs), o.trace);
}

// ---------------------------------------------------------- verify-auroc

struct VerifyOptions {
  std::string mode = "noise";
  std::vector<double> auroc{0.9};
  std::vector<double> p{0.1};
  std::vector<int> n{2000};
  int trials = 100;
  uint64_t seed = 0;
  bool serial = false;
  std::string out;
};

void RunVerify(const VerifyOptions& o, Io& io) {
  Table t;
  if (o.mode == "noise") {
    t.header = {"auroc", "p", "n", "trials", "predicted", "empirical_mean", "empirical_sd",
                "abs_error", "predicted_from_clean"};
  } else if (o.mode == "bias") {
    t.header = {"auroc", "rate", "n", "trials", "mean_residual", "sd_residual",
                "mean_direct", "mean_reconstruction"};
  } else {
    Fail(ErrorKind::kConfiguration, "unknown verify mode '" + o.mode + "'");
  }
  for (double a : o.auroc) {
    for (double p : o.p) {
      for (int n : o.n) {
        std::vector<std::string> row{FormatDouble(a), FormatDouble(p), std::to_string(n),
                                     std::to_string(o.trials)};
        if (o.mode == "noise") {
          const auto r = o.serial ? verify::serial::VerifyNoiseIdentity(a, p, n, o.trials, o.seed)
                                  : verify::VerifyNoiseIdentity(a, p, n, o.trials, o.seed);
          for (double v : {r.predicted, r.empirical_mean, r.empirical_sd,
                           std::abs(r.empirical_mean - r.predicted), r.predicted_from_clean}) {
            row.push_back(FormatDouble(v));
          }
        } else {
          const auto r = o.serial
                             ? verify::serial::VerifyBiasDecomposition(a, p, n, o.trials, o.seed)
                             : verify::VerifyBiasDecomposition(a, p, n, o.trials, o.seed);
          for (double v : {r.mean_residual, r.sd_residual, r.mean_direct, r.mean_reconstruction}) {
            row.push_back(FormatDouble(v));
          }
        }
        t.rows.push_back(std::move(row));
      }
    }
  }
  Emit(t, o.out, io);
}

// ---------------------------------------------------------- bootstrap-sd

struct BootstrapOptions {
  std::vector<double> values;
  std::string input;
  std::string column = "value";
  std::vector<int> n{1, 2, 4, 8};
  int trials = 100;
  uint64_t seed = 0;
  std::string out;
};

void RunBootstrap(const BootstrapOptions& o, Io& io) {
  std::vector<double> xis = o.values;
  if (!o.input.empty()) {
    const Table t = ReadTable(o.input);
    const size_t c = t.RequireColumn(o.column, o.input);
    for (const auto& row : t.rows) xis.push_back(ParseDouble(row[c], o.input));
  }
  Table t;
  t.header = {"n", "trials", "bootstrap_sd"};
  for (int n : o.n) {
    t.rows.push_back({std::to_string(n), std::to_string(o.trials),
                      FormatDouble(risk::BootstrapSd(xis, n, o.trials, o.seed))});
  }
  Emit(t, o.out, io);
}

// ---------------------------------------------------------------- report

struct ReportOptions {
  std::string kind;
  std::string correctness;
  std::vector<std::string> columns;
  double threshold = 0.5;
  std::vector<std::string> xis;
  std::string dataset;
  std::string model;
  std::string reference = "moji";
  std::vector<std::string> candidates;
  std::string out;
};

std::vector<report::XiEntry> LoadXis(const std::vector<std::string>& paths) {
  std::vector<report::XiEntry> entries;
  for (const auto& p : paths) {
    auto part = report::XiEntriesFromTable(ReadTable(p));
    std::move(part.begin(), part.end(), std::back_inserter(entries));
  }
  return entries;
}

void RunReport(const ReportOptions& o, Io& io) {
  Diagnostics diag;
  if (o.kind == "agreement") {
    if (o.correctness.empty()) Fail(ErrorKind::kConfiguration, "--correctness is required");
    const auto table = correctness::ReadCorrectnessTable(o.correctness);
    Emit(report::MatrixToTable(report::AgreementMatrix(table, o.columns, o.threshold, &diag)),
         o.out, io);
  } else if (o.kind == "ranking") {
    const auto entries = LoadXis(o.xis);
    std::string dataset = o.dataset, model = o.model;
    if (dataset.empty() || model.empty()) {
      std::set<std::pair<std::string, std::string>> experiments;
      for (const auto& e : entries) experiments.emplace(e.dataset, e.model);
      if (experiments.size() != 1) {
        Fail(ErrorKind::kConfiguration,
             "xi tables hold several experiments; pass --dataset and --model");
      }
      std::tie(dataset, model) = *experiments.begin();
    }
    const auto columns = report::ColumnsFor(entries, dataset, model);
    Emit(report::MatrixToTable(report::RankingAgreement(columns)), o.out, io);
  } else if (o.kind == "adversarial") {
    const auto grouped = report::GroupByDataset(LoadXis(o.xis));
    Emit(report::AdversarialTable(grouped, o.reference, o.candidates), o.out, io);
  } else {
    Fail(ErrorKind::kConfiguration, "unknown report '" + o.kind + "'");
  }
  ReportWarnings(diag, io);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uncertainty-estimation evaluation toolkit", "ueval"};
  app.set_config("--config", "", "Configuration file mirroring the flags; flags override it");
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress warnings");

  ScoreOptions score;
  auto* s = app.add_subcommand("score", "Compute uncertainty scores for every record");
  s->add_option("--records", score.records, "Generation log")->required();
  s->add_option("--methods", score.methods, "Method ids (default: all)")->delimiter(',');
  s->add_option("--tau", score.tau, "SentenceSAR temperature");
  s->add_option("--alpha", score.alpha, "EigenScore regularizer");
  s->add_option("--out", score.out, "Scores table (default: stdout)");

  CorrectOptions correct;
  auto* c = app.add_subcommand("correct", "Compute n-gram and exact correctness columns");
  c->add_option("--records", correct.records, "Generation log")->required();
  c->add_option("--metrics", correct.metrics, "rouge<n>, rougeL, bleu<n>, exact")
      ->delimiter(',');
  c->add_flag("--legacy-short-zero", correct.legacy_short_zero,
              "Score 0 when either side is shorter than the n-gram order");
  c->add_option("--merge", correct.merge, "Correctness table whose columns are appended");
  c->add_option("--out", correct.out, "Correctness table (default: stdout)");

  JudgeOptions judge_opts;
  auto* j = app.add_subcommand("judge", "Query LLM judges and write verdict columns");
  j->add_option("--records", judge_opts.records, "Generation log")->required();
  j->add_option("--judges", judge_opts.judges, "Judge configuration file")->required();
  j->add_option("--cache-dir", judge_opts.cache_dir, "Verdict cache directory");
  j->add_option("--merge", judge_opts.merge, "Correctness table to append the columns to");
  j->add_option("--verdicts-out", judge_opts.verdicts_out, "Line-delimited verdict dump");
  j->add_option("--out", judge_opts.out, "Correctness table (default: stdout)");

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Risk-correlation experiments");
  e->add_option("--mode", eval.mode, "sp | sp-moji | ood | perturb")
      ->check(CLI::IsMember({"sp", "sp-moji", "ood", "perturb"}));
  e->add_option("--records", eval.records, "Generation log")->required();
  e->add_option("--scores", eval.scores, "Scores table")->required();
  e->add_option("--correctness", eval.correctness, "Correctness table (sp, sp-moji)");
  e->add_option("--columns,--column", eval.columns,
                "Correctness columns (sp); results use the first")
      ->delimiter(',');
  e->add_option("--judge-columns", eval.judge_columns,
                "Judge verdict columns (sp-moji; default: all judge.* columns)")
      ->delimiter(',');
  e->add_option("--threshold", eval.threshold, "Binarization threshold d");
  e->add_option("--entropy-threshold", eval.entropy_threshold,
                "Drop records whose MoJI entropy exceeds this (sp-moji)");
  e->add_option("--cor", eval.cor, "spearman | pair_auroc (perturb)");
  e->add_option("--tags", eval.tags, "Partition tags attached to the results")->delimiter(',');
  e->add_option("--out", eval.out, "Results table (default: stdout)");
  e->add_option("--xi-out", eval.xi_out, "Long xi table: dataset,model,column,method,value");

  PerturbOptions pert;
  auto* p = app.add_subcommand("perturb", "Generate word-shuffle perturbation grids");
  p->add_option("--records", pert.records, "Generation log")->required();
  p->add_option("--strengths", pert.strengths, "Strength grid")->delimiter(',');
  p->add_option("--seed", pert.seed, "Seed");
  p->add_option("--out", pert.out, "Derived generation log (default: stdout)");

  EloOptions elo_opts;
  auto* el = app.add_subcommand("elo", "Elo ratings over experiment results");
  el->add_option("--results", elo_opts.results, "Results tables")->required()->delimiter(',');
  el->add_option("--partition", elo_opts.partitions, "'all' or '+'-joined tags")
      ->delimiter(',');
  el->add_option("--steps", elo_opts.steps, "Number of games");
  el->add_option("--seed", elo_opts.seed, "Seed");
  el->add_option("--k", elo_opts.k, "Update factor K");
  el->add_option("--scale", elo_opts.scale, "Rating scale s");
  el->add_option("--window", elo_opts.window, "Snapshots used for the statistics");
  el->add_option("--out", elo_opts.out, "Ratings table (default: stdout)");
  el->add_option("--trace", elo_opts.trace, "Convergence trace table");

  VerifyOptions verify_opts;
  auto* v = app.add_subcommand("verify-auroc", "Synthetic checks of the AUROC identities");
  v->add_option("--mode", verify_opts.mode, "noise | bias")
      ->check(CLI::IsMember({"noise", "bias"}));
  v->add_option("--auroc", verify_opts.auroc, "Base AUROC values")->delimiter(',');
  v->add_option("--p", verify_opts.p, "Noise (noise) or distortion (bias) rates")
      ->delimiter(',');
  v->add_option("--n", verify_opts.n, "Sample sizes")->delimiter(',');
  v->add_option("--trials", verify_opts.trials, "Trials per grid point");
  v->add_option("--seed", verify_opts.seed, "Seed");
  v->add_flag("--serial", verify_opts.serial, "Use the single-threaded reference");
  v->add_option("--out", verify_opts.out, "Report table (default: stdout)");

  BootstrapOptions boot;
  auto* b = app.add_subcommand("bootstrap-sd", "Bootstrap SD of judge-ensemble means");
  b->add_option("--values", boot.values, "Per-judge xi values")->delimiter(',');
  b->add_option("--input", boot.input, "Table holding per-judge xi values");
  b->add_option("--column", boot.column, "Column of --input holding the values");
  b->add_option("--n", boot.n, "Ensemble sizes")->delimiter(',');
  b->add_option("--trials", boot.trials, "Bootstrap samples");
  b->add_option("--seed", boot.seed, "Seed");
  b->add_option("--out", boot.out, "Report table (default: stdout)");

  ReportOptions rep;
  auto* r = app.add_subcommand("report", "Agreement, ranking and adversarial reports");
  r->add_option("kind", rep.kind, "agreement | ranking | adversarial")
      ->required()
      ->check(CLI::IsMember({"agreement", "ranking", "adversarial"}));
  r->add_option("--correctness", rep.correctness, "Correctness table (agreement)");
  r->add_option("--columns", rep.columns, "Columns to compare (agreement)")->delimiter(',');
  r->add_option("--threshold", rep.threshold, "Binarization threshold");
  r->add_option("--xis", rep.xis, "Long xi tables (ranking, adversarial)")->delimiter(',');
  r->add_option("--dataset", rep.dataset, "Experiment dataset (ranking)");
  r->add_option("--model", rep.model, "Experiment model (ranking)");
  r->add_option("--reference", rep.reference, "Reference column (adversarial)");
  r->add_option("--candidates", rep.candidates, "Candidate columns (adversarial)")
      ->delimiter(',');
  r->add_option("--out", rep.out, "Report table (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n\n" << app.help();
    return 1;
  }

  Io io{out, err, quiet};
  try {
    if (*s) RunScore(score, io);
    if (*c) RunCorrect(correct, io);
    if (*j) RunJudge(judge_opts, io);
    if (*e) RunEval(eval, io);
    if (*p) RunPerturb(pert, io);
    if (*el) RunElo(elo_opts, io);
    if (*v) RunVerify(verify_opts, io);
    if (*b) RunBootstrap(boot, io);
    if (*r) RunReport(rep, io);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return ExitCodeFor(ex.kind());
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

int Main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Run(args, std::cout, std::cerr);
}

}  // namespace ueval::cli
