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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "stub_judge_server.h"
#include "test_util.h"
#include "ueval/cli.h"
#include "ueval/correctness.h"
#include "ueval/elo.h"
#include "ueval/judge.h"
#include "ueval/perturbation.h"
#include "ueval/riskmetrics.h"
#include "ueval/scorers.h"
#include "ueval/table.h"
#include "ueval/verification.h"

namespace ueval::acceptance {
namespace {

// Tolerances and budgets.
constexpr double kNoiseTolerance = 0.01;
constexpr double kNoiseBudgetS = 10.0;
constexpr double kBiasTolerance = 0.01;
constexpr double kBiasBudgetS = 60.0;
constexpr double kBootstrapRatioLo = 1.7;
constexpr double kBootstrapRatioHi = 2.3;
constexpr double kBootstrapMonotoneSlack = 1.07;
constexpr double kZeroSumTolerance = 1e-9;
constexpr double kEloGapTolerance = 25.0;
constexpr double kEloEqualTolerance = 5.0;
constexpr double kEloBudgetS = 30.0;
constexpr double kScorerTolerance = 1e-9;
constexpr double kMojiTolerance = 1e-12;
constexpr double kEndToEndBudgetS = 120.0;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

// 1. Noise identity.
void NoiseIdentity(Verdict& v) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double auroc : {0.75, 0.9}) {
    for (double p : {0.1, 0.2, 0.3}) {
      const verify::NoiseReport r = verify::VerifyNoiseIdentity(auroc, p, 2000, 100, 7);
      const double err = std::abs(r.empirical_mean - r.predicted);
      worst = std::max(worst, err);
      v.Require(err <= kNoiseTolerance, "auroc " + Fmt(auroc, 2) + " p " + Fmt(p, 1) +
                                            " error " + Fmt(err));
    }
  }
  const double elapsed = Seconds(start);
  v.Require(elapsed < kNoiseBudgetS, "runtime " + Fmt(elapsed, 1) + " s");
  v.detail << "max |empirical - predicted| = " << Fmt(worst) << " (tol " << kNoiseTolerance
           << ")";
}

// 2. Bias decomposition.
void BiasDecomposition(Verdict& v) {
  const auto start = Clock::now();
  double worst = 0.0;
  int sd_decreases = 0;
  for (double auroc : {0.6, 0.75, 0.9}) {
    for (double rate : {0.1, 0.2, 0.3}) {
      const verify::BiasReport large =
          verify::VerifyBiasDecomposition(auroc, rate, 1000, 120, 11);
      const verify::BiasReport small =
          verify::VerifyBiasDecomposition(auroc, rate, 100, 120, 11);
      worst = std::max(worst, std::abs(large.mean_residual));
      v.Require(std::abs(large.mean_residual) < kBiasTolerance,
                "auroc " + Fmt(auroc, 2) + " rate " + Fmt(rate, 1) + " residual " +
                    Fmt(large.mean_residual));
      const bool decreases = large.sd_residual < small.sd_residual;
      sd_decreases += decreases;
      v.Require(decreases, "residual SD did not shrink at auroc " + Fmt(auroc, 2) + " rate " +
                               Fmt(rate, 1));
    }
  }
  const double elapsed = Seconds(start);
  v.Require(elapsed < kBiasBudgetS, "runtime " + Fmt(elapsed, 1) + " s");
  v.detail << "max |mean residual| at N=1000 = " << Fmt(worst) << "; SD shrinks N=100->1000 at "
           << sd_decreases << "/9 grid points";
}

// 3. Bootstrap SD halving.
void BootstrapHalving(Verdict& v) {
  const std::vector<int> sizes{1, 2, 4, 8};
  std::vector<double> mean_sd(sizes.size(), 0.0);
  double ratio_sum = 0.0;
  constexpr int kSeeds = 20;
  for (int seed = 0; seed < kSeeds; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::normal_distribution<double> judge_xi(0.75, 0.03);
    std::vector<double> xis(14);
    for (double& x : xis) x = judge_xi(rng);
    std::vector<double> sd(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) {
      sd[i] = risk::BootstrapSd(xis, sizes[i], 100, 500 + seed);
      mean_sd[i] += sd[i] / kSeeds;
    }
    ratio_sum += sd[0] / sd[2];
  }
  const double ratio = ratio_sum / kSeeds;
  v.Require(ratio >= kBootstrapRatioLo && ratio <= kBootstrapRatioHi,
            "mean SD(1)/SD(4) = " + Fmt(ratio, 3));
  for (size_t i = 1; i < sizes.size(); ++i) {
    v.Require(mean_sd[i] <= mean_sd[i - 1] * kBootstrapMonotoneSlack,
              "SD increased from n=" + std::to_string(sizes[i - 1]) + " to n=" +
                  std::to_string(sizes[i]));
  }
  v.detail << "mean SD(1)/SD(4) over " << kSeeds << " seeds = " << Fmt(ratio, 3)
           << " (range [" << kBootstrapRatioLo << ", " << kBootstrapRatioHi << "]); mean SD n=1,2,4,8: ";
  for (size_t i = 0; i < sizes.size(); ++i) v.detail << (i ? ", " : "") << Fmt(mean_sd[i], 5);
}

ExperimentResult Cell(const std::string& method, const std::string& dataset, double value) {
  return {.method = method, .dataset = dataset, .model = "m", .value = value};
}

// 4. Elo protocol.
void EloProtocol(Verdict& v) {
  const auto start = Clock::now();
  const elo::EloParams params;  // 1000, K=2, s=400, 100k steps, window 1000

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 0.9);
  std::vector<ExperimentResult> pool;
  for (int c = 0; c < 40; ++c) {
    for (const char* m : {"a", "b", "c", "d", "e"}) {
      pool.push_back(Cell(m, "d" + std::to_string(c), std::round(u(rng) * 20) / 20));
    }
  }
  const elo::EloRun mixed = elo::RunRating(pool, "all", params, 1);
  const double drift = std::abs(mixed.rating_sum - 5 * params.initial);
  v.Require(drift <= kZeroSumTolerance, "rating-sum drift " + std::to_string(drift));

  std::vector<ExperimentResult> duel;
  for (int c = 0; c < 11; ++c) {
    duel.push_back(Cell("strong", "d" + std::to_string(c), c < 10 ? 0.8 : 0.6));
    duel.push_back(Cell("weak", "d" + std::to_string(c), 0.7));
  }
  double gap_sum = 0.0;
  std::string per_seed;
  for (uint64_t seed : {1, 2, 3}) {
    const elo::EloRun run = elo::RunRating(duel, "all", params, seed);
    const double gap = run.ratings[0].mean - run.ratings[1].mean;
    gap_sum += gap;
    per_seed += (per_seed.empty() ? "" : ", ") + Fmt(gap, 1);
  }
  const double gap = gap_sum / 3.0;
  v.Require(std::abs(gap - 400.0) <= kEloGapTolerance, "mean gap " + Fmt(gap, 1));

  std::vector<ExperimentResult> equal;
  for (int c = 0; c < 10; ++c) {
    for (const char* m : {"x", "y", "z"}) equal.push_back(Cell(m, "d" + std::to_string(c), 0.7));
  }
  const elo::EloRun flat = elo::RunRating(equal, "all", params, 5);
  double worst = 0.0;
  for (const auto& r : flat.ratings) worst = std::max(worst, std::abs(r.mean - 1000.0));
  v.Require(worst <= kEloEqualTolerance, "equal-method deviation " + Fmt(worst, 2));

  const double elapsed = Seconds(start);
  v.Require(elapsed < kEloBudgetS, "runtime " + Fmt(elapsed, 1) + " s");
  v.detail << "zero-sum drift " << drift << "; gap per seed [" << per_seed << "] mean "
           << Fmt(gap, 1) << " (target 400 +/- " << kEloGapTolerance
           << "); equal methods max |r - 1000| = " << Fmt(worst, 3);
}

// 5. AUROC oracle equivalence.
void AurocOracle(Verdict& v) {
  std::mt19937_64 rng(5);
  int mismatches = 0, with_ties = 0;
  for (int instance = 0; instance < 1000; ++instance) {
    const int n = std::uniform_int_distribution<int>(2, 50)(rng);
    const int levels = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
      s[i] = std::uniform_int_distribution<int>(0, levels)(rng) * 0.1;
      y[i] = std::bernoulli_distribution(0.5)(rng);
    }
    y[0] = 1;
    y[1] = 0;
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    with_ties += std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (risk::Auroc(s, y) != oracle::PairAuroc(s, y)) ++mismatches;
  }
  v.Require(mismatches == 0, std::to_string(mismatches) + " mismatching instances");
  v.detail << "1000 instances (n <= 50, " << with_ties << " with ties), " << mismatches
           << " mismatches";
}

SampleGeneration Tokens(std::vector<double> logprobs, std::optional<int64_t> cluster = {}) {
  SampleGeneration s;
  s.text = "t";
  s.token_logprobs = std::move(logprobs);
  s.cluster_id = cluster;
  return s;
}

// 6. Scorer identities.
void ScorerIdentities(Verdict& v) {
  double worst = 0.0;
  auto check = [&](double got, double want, const std::string& what) {
    const double err = std::abs(got - want);
    worst = std::max(worst, err);
    v.Require(err <= kScorerTolerance, what + " off by " + std::to_string(err));
  };
  const double ln2 = std::log(2.0);
  const std::vector<double> uniform(7, -ln2);
  check(scorers::Perplexity(uniform), 2.0, "perplexity");

  AnswerSequence answer{"a b c", {-0.3, -1.2, -0.05}};
  const double sum = -0.3 - 1.2 - 0.05;
  check(scorers::GNll(answer), -sum, "G-NLL sum");
  check(scorers::GNll(answer), 3.0 * (-sum / 3.0), "G-NLL length x mean");

  const std::vector<SampleGeneration> clusters{Tokens({-1}, 0), Tokens({-1}, 0), Tokens({-1}, 1),
                                               Tokens({-1}, 1)};
  check(scorers::SemanticEntropy(clusters, scorers::SeVariant::kDiscrete), ln2,
        "discrete semantic entropy");

  const double alpha = 1e-3;
  std::vector<SampleGeneration> same(4, Tokens({-1}));
  for (auto& s : same) s.embedding = std::vector<double>{0.3, -1.2, 2.0, 0.7};
  check(scorers::EigenScore(same, alpha), std::log(alpha), "EigenScore of identical embeddings");

  const std::vector<SampleGeneration> varied{Tokens({-0.2, -1.4}), Tokens({-0.9}),
                                             Tokens({-0.1, -0.3, -2.2})};
  double mean_log_ppl = 0.0;
  for (const auto& s : varied) mean_log_ppl += std::log(scorers::Perplexity(s.token_logprobs));
  mean_log_ppl /= static_cast<double>(varied.size());
  check(scorers::PredictiveEntropy(varied, true), mean_log_ppl, "LN predictive entropy");

  SimilarityData one;
  one.sentence_sim = std::vector<std::vector<double>>{{1.0}};
  const std::vector<SampleGeneration> single{Tokens({-0.4, -0.25})};
  for (double tau : {0.1, 1.0, 7.0}) {
    check(scorers::SentenceSar(single, one, tau), 0.65, "SentenceSAR N=1");
  }
  v.detail << "6 identities, max error " << worst << " (tol " << kScorerTolerance << ")";
}

// 7. SP-MoJI reduction.
void SpMojiReduction(Verdict& v) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    std::vector<double> u(40);
    std::vector<std::optional<int>> c(40);
    for (size_t i = 0; i < u.size(); ++i) {
      u[i] = normal(rng);
      c[i] = i % 7 == 3 ? std::nullopt : std::optional<int>(normal(rng) + u[i] < 0.0);
    }
    c[0] = 0;
    c[1] = 1;
    const double xi = risk::XiSp(u, c);
    const std::vector<std::vector<std::optional<int>>> k1{c};
    const std::vector<std::vector<std::optional<int>>> k5(5, c);
    worst = std::max({worst, std::abs(risk::XiSpMoji(u, k1) - xi),
                      std::abs(risk::XiSpMoji(u, k5) - xi)});
  }
  v.Require(worst <= kMojiTolerance, "K=1 / identical-column error " + std::to_string(worst));

  const std::vector<double> u{1, 2, 3, 4, 5, 6};
  const std::vector<std::optional<int>> a{1, 1, 1, 0, 1, 1};
  const std::vector<std::optional<int>> b{1, 1, 1, 1, 0, 1};
  const double expected = 0.5 * (oracle::PairAuroc(u, {0, 0, 0, 1, 0, 0}) +
                                 oracle::PairAuroc(u, {0, 0, 0, 0, 1, 0}));
  const std::vector<std::vector<std::optional<int>>> two{a, b};
  const double got = risk::XiSpMoji(u, two);
  v.Require(std::abs(got - expected) <= kMojiTolerance, "K=2 hand case " + Fmt(got, 6));
  v.detail << "K=1 and K=5 identical columns match xi_SP within " << worst
           << "; K=2 hand case " << Fmt(got, 4) << " = mean of pair AUROCs " << Fmt(expected, 4);
}

// 8. Perturbation.
void Perturbation(Verdict& v) {
  std::mt19937_64 rng(13);
  const std::vector<std::string> vocab{"the", "a", "river", "fox", "ran", "over", "hills",
                                       "quietly", "and", "then", "slept", "under", "stars"};
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const int w = std::uniform_int_distribution<int>(0, 30)(rng);
    std::string text;
    std::vector<std::string> words;
    for (int i = 0; i < w; ++i) {
      words.push_back(vocab[std::uniform_int_distribution<size_t>(0, vocab.size() - 1)(rng)]);
      text += (i ? (i % 4 ? " " : "  \t") : "") + words.back();
    }
    const double s = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::istringstream out(perturb::ShuffleWords(text, s, rng()));
    std::vector<std::string> got;
    for (std::string word; out >> word;) got.push_back(word);
    std::sort(words.begin(), words.end());
    std::sort(got.begin(), got.end());
    violations += got != words;
  }
  v.Require(violations == 0, std::to_string(violations) + " multiset violations");

  std::vector<risk::PerturbSeries> up, down;
  for (int r = 0; r < 6; ++r) {
    risk::PerturbSeries a, b;
    for (double s : perturb::kDefaultStrengths) {
      a.emplace_back(s, s);
      b.emplace_back(s, -s);
    }
    up.push_back(a);
    down.push_back(b);
  }
  const double xi_up = risk::XiPerturb(up, risk::CorKind::kSpearman);
  const double xi_down = risk::XiPerturb(down, risk::CorKind::kSpearman);
  v.Require(xi_up == 1.0, "xi_perturb(u = s) = " + Fmt(xi_up, 6));
  v.Require(xi_down == -1.0, "xi_perturb(u = -s) = " + Fmt(xi_down, 6));
  v.detail << "1000 random texts, " << violations << " multiset violations; xi_perturb "
           << Fmt(xi_up, 1) << " / " << Fmt(xi_down, 1);
}

// 9. Judge plumbing.
void JudgePlumbing(Verdict& v) {
  const std::string qa =
      "We are assessing the quality of answers \n"
      "to the following question: Q\n"
      "The expected answer is: A.\n"
      "The proposed answer is: B\n"
      "Within the context of the question,\n"
      "does the proposed answer mean the same as the expected answer?\n"
      "Respond only with yes or no.\n"
      "Response:";
  const std::string gen =
      "We are assessing the quality of answers \n"
      "to the following question: Q\n"
      "The following are example answers: A.\n"
      "The proposed answer is: B\n"
      "Within the context of the question and example answer, \n"
      "is the proposed answer correct?\n"
      "Respond only with yes or no.\n"
      "Response:";
  const std::vector<std::string> refs{"A"};
  v.Require(judge::RenderPrompt(judge::PromptTemplate::kQa, "Q", refs, "B") == qa, "qa template");
  v.Require(judge::RenderPrompt(judge::PromptTemplate::kGen, "Q", refs, "B") == gen,
            "gen template");
  v.Require(judge::ParseVerdict("Yes.") == 1 && judge::ParseVerdict("no") == 0 &&
                !judge::ParseVerdict("maybe").has_value(),
            "parse rule");

  testing_util::StubJudgeServer server([](const nlohmann::json& body) {
    const std::string prompt = body.at("prompt").get<std::string>();
    return std::pair<int, std::string>{
        200, prompt.find("answer is: Paris") != std::string::npos ? "Yes." : "no"};
  });
  testing_util::TempDir dir;
  const auto records = LoadRecords(std::string(UEVAL_TEST_DATA_DIR) + "/qa_records.jsonl");
  std::vector<judge::JudgeConfig> configs;
  for (int k = 0; k < 2; ++k) {
    configs.push_back({.judge_id = "stub" + std::to_string(k),
                       .model_name = "stub-model-" + std::to_string(k),
                       .prompt_template = k ? judge::PromptTemplate::kGen : judge::PromptTemplate::kQa,
                       .endpoint_url = server.url(),
                       .num_samples = 2});
  }
  judge::HttpJudgeTransport transport;
  const auto first = judge::QueryJudges(records, configs, dir.path(), transport);
  const int first_requests = server.requests();
  const std::string first_cache = ReadFile(dir / "stub0.jsonl");
  const auto second = judge::QueryJudges(records, configs, dir.path(), transport);
  const int rerun_calls = server.requests() - first_requests;
  const size_t expected = records.size() * 2 * 2;
  v.Require(first.verdicts.size() == expected, "verdict count");
  v.Require(rerun_calls == 0 && second.stats.network_calls == 0, "cached rerun hit the network");
  v.Require(second.verdicts == first.verdicts, "cached rerun not identical");
  v.Require(ReadFile(dir / "stub0.jsonl") == first_cache, "cache file changed on rerun");
  v.detail << "templates byte-exact; parse rule ok; " << first.verdicts.size()
           << " verdicts from " << first_requests << " stub calls, rerun made " << rerun_calls
           << " calls with identical verdicts";
}

// 10. End-to-end CLI flow on the bundled corpus.
std::vector<std::string> RunPipeline(const testing_util::TempDir& dir, Verdict& v) {
  const std::string data = UEVAL_TEST_DATA_DIR;
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  WriteFile(dir / "all.jsonl",
            ReadFile(data + "/qa_records.jsonl") + ReadFile(data + "/perturb_records.jsonl"));
  const std::vector<std::vector<std::string>> steps{
      {"--quiet", "score", "--records", p("all.jsonl"), "--out", p("scores.csv")},
      {"--quiet", "correct", "--records", data + "/qa_records.jsonl", "--metrics",
       "rouge1,rougeL,bleu4,exact", "--merge", data + "/judge_verdicts.csv", "--out",
       p("correctness.csv")},
      {"--quiet", "eval", "--mode", "sp", "--records", data + "/qa_records.jsonl", "--scores",
       p("scores.csv"), "--correctness", p("correctness.csv"), "--columns",
       "rougeL,rouge1,bleu4,exact", "--tags", "qa,sp", "--out", p("sp.csv"), "--xi-out",
       p("xi_sp.csv")},
      {"--quiet", "eval", "--mode", "sp-moji", "--records", data + "/qa_records.jsonl",
       "--scores", p("scores.csv"), "--correctness", p("correctness.csv"), "--tags",
       "qa,sp_moji", "--out", p("sp_moji.csv"), "--xi-out", p("xi_moji.csv")},
      {"--quiet", "eval", "--mode", "ood", "--records", data + "/qa_records.jsonl", "--scores",
       p("scores.csv"), "--tags", "qa,ood", "--out", p("ood.csv")},
      {"--quiet", "eval", "--mode", "perturb", "--records", data + "/perturb_records.jsonl",
       "--scores", p("scores.csv"), "--tags", "stories,perturb", "--out", p("perturb.csv")},
      {"--quiet", "elo", "--results",
       p("sp.csv") + "," + p("sp_moji.csv") + "," + p("ood.csv") + "," + p("perturb.csv"),
       "--partition", "all,qa,sp", "--seed", "7", "--out", p("elo.csv"), "--trace",
       p("elo_trace.csv")},
      {"--quiet", "report", "agreement", "--correctness", p("correctness.csv"), "--out",
       p("agreement.csv")},
      {"--quiet", "report", "ranking", "--xis", p("xi_sp.csv") + "," + p("xi_moji.csv"),
       "--dataset", "trivia", "--model", "toy-lm", "--out", p("ranking.csv")},
      {"--quiet", "report", "adversarial", "--xis", p("xi_sp.csv") + "," + p("xi_moji.csv"),
       "--out", p("adversarial.csv")},
  };
  for (const auto& args : steps) {
    std::ostringstream out, err;
    const int code = cli::Run(args, out, err);
    v.Require(code == 0, args[1] + " exited " + std::to_string(code) + ": " + err.str());
  }
  std::vector<std::string> outputs;
  for (const char* name : {"scores.csv", "correctness.csv", "sp.csv", "xi_sp.csv", "sp_moji.csv",
                           "xi_moji.csv", "ood.csv", "perturb.csv", "elo.csv", "elo_trace.csv",
                           "agreement.csv", "ranking.csv", "adversarial.csv"}) {
    outputs.push_back(std::filesystem::exists(dir / name) ? ReadFile(dir / name) : "");
    v.Require(!outputs.back().empty(), std::string(name) + " missing or empty");
  }
  return outputs;
}

void EndToEnd(Verdict& v) {
  const auto start = Clock::now();
  testing_util::TempDir a, b;
  const auto first = RunPipeline(a, v);
  const auto second = RunPipeline(b, v);
  v.Require(first == second, "outputs differ between runs");
  size_t elo_rows = 0;
  if (!first.empty() && !first[8].empty()) elo_rows = ParseTable(first[8], "elo").rows.size();
  v.Require(elo_rows > 0, "no Elo ratings");
  const double elapsed = Seconds(start);
  v.Require(elapsed < kEndToEndBudgetS, "runtime " + Fmt(elapsed, 1) + " s");
  v.detail << "score -> correct -> eval x4 -> elo -> report x3 run twice, 13 tables identical; "
           << elo_rows << " Elo rows";
}

int Main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Noise identity", NoiseIdentity},
      {2, "Bias decomposition", BiasDecomposition},
      {3, "Bootstrap SD halving", BootstrapHalving},
      {4, "Elo protocol", EloProtocol},
      {5, "AUROC oracle equivalence", AurocOracle},
      {6, "Scorer identities", ScorerIdentities},
      {7, "SP-MoJI reduction", SpMojiReduction},
      {8, "Perturbation", Perturbation},
      {9, "Judge plumbing", JudgePlumbing},
      {10, "End-to-end CLI flow", EndToEnd},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = Clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed = Seconds(start);
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
              << "): " << v.detail.str() << " [" << Fmt(elapsed, 2) << " s]" << std::endl;
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace ueval::acceptance

int main() { return ueval::acceptance::Main(); }
