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

#include "ueval/scorers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace ueval::scorers {
namespace {

void RequireSamples(std::span<const SampleGeneration> samples,
                    std::string_view method) {
  if (samples.empty()) {
    Fail(ErrorKind::kDegenerateInput,
         std::string(method) + " needs at least one sample (N=0)");
  }
}

double LogSumExp(std::span<const double> values) {
  double max = -std::numeric_limits<double>::infinity();
  for (double v : values) max = std::max(max, v);
  if (std::isinf(max)) return max;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

size_t Utf8Length(std::string_view text) {
  size_t count = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++count;
  }
  return count;
}

double CheckedScore(double value, std::string_view method) {
  if (!std::isfinite(value)) {
    Fail(ErrorKind::kNumerical,
         std::string(method) + " produced a non-finite score");
  }
  return value;
}

const std::vector<std::vector<double>>& RequireSimilarity(
    std::span<const SampleGeneration> samples, const SimilarityData& sim) {
  if (!sim.sentence_sim) {
    Fail(ErrorKind::kRequirement, "sentence_sim is missing");
  }
  const auto& m = *sim.sentence_sim;
  if (m.size() != samples.size()) {
    Fail(ErrorKind::kShape, "sentence_sim side " + std::to_string(m.size()) +
                                " != number of samples " +
                                std::to_string(samples.size()));
  }
  for (const auto& row : m) {
    if (row.size() != samples.size()) {
      Fail(ErrorKind::kShape, "sentence_sim is not square");
    }
  }
  return m;
}

// Mean over n of [nll_n + sum_{k != n} sim(n, k) * prob_k / tau].
double PenalisedMean(std::span<const double> nll, std::span<const double> prob,
                     const std::vector<std::vector<double>>& sim, double tau) {
  const size_t n_samples = nll.size();
  double total = 0.0;
  for (size_t n = 0; n < n_samples; ++n) {
    double penalty = 0.0;
    for (size_t k = 0; k < n_samples; ++k) {
      if (k != n) penalty += sim[n][k] * prob[k];
    }
    total += nll[n] + penalty / tau;
  }
  return total / static_cast<double>(n_samples);
}

Eigen::MatrixXd RegularisedCovariance(std::span<const SampleGeneration> samples,
                                      double alpha, EigenCentering centering) {
  RequireSamples(samples, "eigenscore");
  if (!(alpha > 0.0)) Fail(ErrorKind::kConfiguration, "alpha must be > 0");
  for (const auto& s : samples) {
    if (!s.embedding) Fail(ErrorKind::kRequirement, "embedding is missing");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(samples.front().embedding->size());
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  if (d == 0) Fail(ErrorKind::kShape, "embedding has dimension 0");
  Eigen::MatrixXd z(d, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& e = *samples[static_cast<size_t>(k)].embedding;
    if (static_cast<Eigen::Index>(e.size()) != d) {
      Fail(ErrorKind::kShape, "inconsistent embedding dimensions (" +
                                  std::to_string(e.size()) + " vs " +
                                  std::to_string(d) + ")");
    }
    z.col(k) = Eigen::Map<const Eigen::VectorXd>(e.data(), d);
  }
  Eigen::MatrixXd centred;
  if (centering == EigenCentering::kSamples) {
    centred = z.colwise() - z.rowwise().mean();
  } else {
    centred = z.rowwise() - z.colwise().mean();
  }
  Eigen::MatrixXd cov = centred.transpose() * centred;
  cov.diagonal().array() += alpha;
  return cov;
}

}  // namespace

ScorerConfig ConfigFromName(std::string_view method, double tau, double alpha) {
  ScorerConfig c;
  c.name = std::string(method);
  c.tau = tau;
  c.alpha = alpha;
  if (method == "predictive_entropy") {
    c.kind = MethodKind::kPredictiveEntropy;
  } else if (method == "predictive_entropy_ln") {
    c.kind = MethodKind::kPredictiveEntropy;
    c.length_normalized = true;
  } else if (method == "semantic_entropy") {
    c.kind = MethodKind::kSemanticEntropy;
    c.se_variant = SeVariant::kLikelihood;
  } else if (method == "semantic_entropy_ln") {
    c.kind = MethodKind::kSemanticEntropy;
    c.se_variant = SeVariant::kLengthNormalized;
  } else if (method == "semantic_entropy_discrete") {
    c.kind = MethodKind::kSemanticEntropy;
    c.se_variant = SeVariant::kDiscrete;
  } else if (method == "sentence_sar") {
    c.kind = MethodKind::kSentenceSar;
  } else if (method == "token_sar") {
    c.kind = MethodKind::kTokenSar;
  } else if (method == "sar") {
    c.kind = MethodKind::kSar;
  } else if (method == "eigenscore") {
    c.kind = MethodKind::kEigenScore;
  } else if (method == "g_nll") {
    c.kind = MethodKind::kGNll;
  } else if (method == "perplexity") {
    c.kind = MethodKind::kPerplexity;
  } else if (method == "p_true") {
    c.kind = MethodKind::kPTrue;
  } else if (method == "sequence_length_answer") {
    c.kind = MethodKind::kSequenceLength;
    c.length_source = LengthSource::kAnswer;
  } else if (method == "sequence_length_samples") {
    c.kind = MethodKind::kSequenceLength;
    c.length_source = LengthSource::kSamplesMean;
  } else {
    Fail(ErrorKind::kConfiguration, "unknown method '" + std::string(method) + "'");
  }
  ValidateConfig(c);
  return c;
}

void ValidateConfig(const ScorerConfig& config) {
  if (!(config.tau > 0.0)) {
    Fail(ErrorKind::kConfiguration, "tau must be > 0 for " + config.name);
  }
  if (!(config.alpha > 0.0)) {
    Fail(ErrorKind::kConfiguration, "alpha must be > 0 for " + config.name);
  }
}

double SequenceLogprob(const SampleGeneration& sample) {
  if (sample.token_logprobs.empty()) {
    Fail(ErrorKind::kDegenerateInput, "sequence has no tokens");
  }
  return std::accumulate(sample.token_logprobs.begin(),
                         sample.token_logprobs.end(), 0.0);
}

double PredictiveEntropy(std::span<const SampleGeneration> samples,
                         bool length_normalized) {
  RequireSamples(samples, "predictive_entropy");
  double total = 0.0;
  for (const auto& s : samples) {
    double nll = -SequenceLogprob(s);
    if (length_normalized) nll /= static_cast<double>(s.token_logprobs.size());
    total += nll;
  }
  return total / static_cast<double>(samples.size());
}

double SemanticEntropy(std::span<const SampleGeneration> samples,
                       SeVariant variant) {
  RequireSamples(samples, "semantic_entropy");
  std::vector<int64_t> clusters;
  clusters.reserve(samples.size());
  for (const auto& s : samples) {
    if (!s.cluster_id) Fail(ErrorKind::kRequirement, "cluster_id is missing");
    clusters.push_back(*s.cluster_id);
  }
  std::vector<int64_t> distinct = clusters;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto slot = [&](int64_t c) {
    return static_cast<size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), c) - distinct.begin());
  };

  const double n = static_cast<double>(samples.size());
  std::vector<double> log_mass(distinct.size());
  if (variant == SeVariant::kDiscrete) {
    std::vector<double> counts(distinct.size(), 0.0);
    for (int64_t c : clusters) counts[slot(c)] += 1.0;
    for (size_t i = 0; i < counts.size(); ++i) log_mass[i] = std::log(counts[i] / n);
  } else {
    std::vector<double> weights;
    std::vector<std::vector<double>> members(distinct.size());
    for (size_t m = 0; m < samples.size(); ++m) {
      double lw = SequenceLogprob(samples[m]);
      if (variant == SeVariant::kLengthNormalized) {
        lw /= static_cast<double>(samples[m].token_logprobs.size());
      }
      weights.push_back(lw);
      members[slot(clusters[m])].push_back(lw);
    }
    const double log_total = LogSumExp(weights);
    for (size_t i = 0; i < distinct.size(); ++i) {
      log_mass[i] = LogSumExp(members[i]) - log_total;
    }
  }
  double total = 0.0;
  for (int64_t c : clusters) total -= log_mass[slot(c)];
  return CheckedScore(total / n, "semantic_entropy");
}

double SentenceSar(std::span<const SampleGeneration> samples,
                   const SimilarityData& sim, double tau) {
  RequireSamples(samples, "sentence_sar");
  if (!(tau > 0.0)) Fail(ErrorKind::kConfiguration, "tau must be > 0");
  const auto& m = RequireSimilarity(samples, sim);
  std::vector<double> nll, prob;
  for (const auto& s : samples) {
    const double lp = SequenceLogprob(s);
    nll.push_back(-lp);
    prob.push_back(std::exp(lp));
  }
  return PenalisedMean(nll, prob, m, tau);
}

double TokenSar(const SampleGeneration& sample) {
  if (!sample.token_relevance) {
    Fail(ErrorKind::kRequirement, "token_relevance is missing");
  }
  const auto& rel = *sample.token_relevance;
  if (rel.size() != sample.token_logprobs.size()) {
    Fail(ErrorKind::kShape, "token_relevance length " + std::to_string(rel.size()) +
                                " != token count " +
                                std::to_string(sample.token_logprobs.size()));
  }
  if (sample.token_logprobs.empty()) {
    Fail(ErrorKind::kDegenerateInput, "sequence has no tokens");
  }
  double weight_sum = 0.0, weighted = 0.0;
  for (size_t t = 0; t < rel.size(); ++t) {
    weight_sum += rel[t];
    weighted += -sample.token_logprobs[t] * rel[t];
  }
  if (!(weight_sum > 0.0)) {
    Fail(ErrorKind::kDegenerateInput, "token relevance weights sum to zero");
  }
  return weighted / weight_sum;
}

double Sar(std::span<const SampleGeneration> samples, const SimilarityData& sim,
           double tau) {
  RequireSamples(samples, "sar");
  if (!(tau > 0.0)) Fail(ErrorKind::kConfiguration, "tau must be > 0");
  const auto& m = RequireSimilarity(samples, sim);
  std::vector<double> nll, prob;
  for (const auto& s : samples) {
    const double token_nll = TokenSar(s);
    nll.push_back(token_nll);
    prob.push_back(std::exp(-token_nll));
  }
  return PenalisedMean(nll, prob, m, tau);
}

EigenScoreForms EigenScoreAllForms(std::span<const SampleGeneration> samples,
                                   double alpha, EigenCentering centering) {
  const Eigen::MatrixXd cov = RegularisedCovariance(samples, alpha, centering);
  const double n = static_cast<double>(cov.rows());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    Fail(ErrorKind::kNumerical, "eigen-decomposition failed");
  }
  const Eigen::VectorXd& eig = solver.eigenvalues();
  double sum_logs = 0.0, product = 1.0;
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    if (!std::isfinite(eig[k]) || eig[k] <= 0.0) {
      Fail(ErrorKind::kNumerical, "non-positive or non-finite eigenvalue");
    }
    sum_logs += std::log(eig[k]);
    product *= eig[k];
  }

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  double log_det = std::numeric_limits<double>::quiet_NaN();
  if (llt.info() == Eigen::Success) {
    log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }
  return {log_det / n, std::log(product) / n, sum_logs / n};
}

double EigenScore(std::span<const SampleGeneration> samples, double alpha,
                  EigenCentering centering) {
  return CheckedScore(EigenScoreAllForms(samples, alpha, centering).sum_of_logs,
                      "eigenscore");
}

double GNll(const AnswerSequence& answer) {
  if (answer.token_logprobs.empty()) {
    Fail(ErrorKind::kDegenerateInput, "answer has no tokens");
  }
  return -std::accumulate(answer.token_logprobs.begin(),
                          answer.token_logprobs.end(), 0.0);
}

double Perplexity(std::span<const double> token_logprobs) {
  if (token_logprobs.empty()) {
    Fail(ErrorKind::kDegenerateInput, "sequence has no tokens");
  }
  const double nll = -std::accumulate(token_logprobs.begin(), token_logprobs.end(), 0.0);
  return std::exp(nll / static_cast<double>(token_logprobs.size()));
}

double PTrue(const GenerationRecord& record) {
  if (!record.p_true_logprob) {
    Fail(ErrorKind::kRequirement, "p_true_logprob is missing");
  }
  const double lp = *record.p_true_logprob;
  if (std::isnan(lp) || lp > 0.0) {
    Fail(ErrorKind::kValidation, "p_true_logprob must be <= 0");
  }
  return 1.0 - std::exp(lp);
}

double SequenceLength(const GenerationRecord& record, LengthSource source,
                      LengthMode mode) {
  auto length_of = [mode](std::string_view text, size_t tokens) {
    return static_cast<double>(mode == LengthMode::kChars ? Utf8Length(text) : tokens);
  };
  if (source == LengthSource::kAnswer) {
    return length_of(record.answer.text, record.answer.token_logprobs.size());
  }
  if (record.samples.empty()) {
    Fail(ErrorKind::kRequirement, "samples (N>=1) are missing");
  }
  double total = 0.0;
  for (const auto& s : record.samples) {
    total += length_of(s.text, s.token_logprobs.size());
  }
  return total / static_cast<double>(record.samples.size());
}

ScoreRow ScoreRecord(const GenerationRecord& record, const ScorerConfig& config) {
  ValidateConfig(config);
  const std::span<const SampleGeneration> samples = record.samples;
  const int n_samples = static_cast<int>(samples.size());
  ScoreRow row{record.id, config.name, 0.0, 0};
  switch (config.kind) {
    case MethodKind::kPredictiveEntropy:
      row.score = PredictiveEntropy(samples, config.length_normalized);
      row.n_samples_used = n_samples;
      break;
    case MethodKind::kSemanticEntropy:
      row.score = SemanticEntropy(samples, config.se_variant);
      row.n_samples_used = n_samples;
      break;
    case MethodKind::kSentenceSar:
      row.score = SentenceSar(samples, record.similarity, config.tau);
      row.n_samples_used = n_samples;
      break;
    case MethodKind::kTokenSar: {
      // Record-level TokenSAR: mean over the sampled sequences.
      RequireSamples(samples, "token_sar");
      double total = 0.0;
      for (const auto& s : samples) total += TokenSar(s);
      row.score = total / n_samples;
      row.n_samples_used = n_samples;
      break;
    }
    case MethodKind::kSar:
      row.score = Sar(samples, record.similarity, config.tau);
      row.n_samples_used = n_samples;
      break;
    case MethodKind::kEigenScore:
      row.score = EigenScore(samples, config.alpha, config.centering);
      row.n_samples_used = n_samples;
      break;
    case MethodKind::kGNll:
      row.score = GNll(record.answer);
      break;
    case MethodKind::kPerplexity:
      row.score = Perplexity(record.answer.token_logprobs);
      break;
    case MethodKind::kPTrue:
      row.score = PTrue(record);
      break;
    case MethodKind::kSequenceLength:
      row.score = SequenceLength(record, config.length_source, config.length_mode);
      if (config.length_source == LengthSource::kSamplesMean) {
        row.n_samples_used = n_samples;
      }
      break;
  }
  CheckedScore(row.score, config.name);
  return row;
}

namespace {

struct RecordOutcome {
  std::vector<ScoreRow> rows;
  std::vector<std::string> skipped;
};

RecordOutcome ScoreOne(const GenerationRecord& record,
                       std::span<const ScorerConfig> configs) {
  RecordOutcome out;
  for (const auto& config : configs) {
    try {
      out.rows.push_back(ScoreRecord(record, config));
    } catch (const std::exception& e) {
      out.skipped.push_back("skipped record '" + record.id + "' method '" +
                            config.name + "': " + e.what());
    }
  }
  return out;
}

ScoreAllResult Merge(std::vector<RecordOutcome>& outcomes) {
  ScoreAllResult result;
  for (auto& o : outcomes) {
    for (auto& row : o.rows) result.rows.push_back(std::move(row));
    for (auto& msg : o.skipped) result.skipped.Warn(std::move(msg));
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ScoreRow& a, const ScoreRow& b) {
                     if (a.record_id != b.record_id) return a.record_id < b.record_id;
                     return a.method < b.method;
                   });
  return result;
}

}  // namespace

ScoreAllResult ScoreAll(std::span<const GenerationRecord> records,
                        std::span<const ScorerConfig> configs) {
  for (const auto& c : configs) ValidateConfig(c);
  std::vector<RecordOutcome> outcomes(records.size());
  const int64_t n = static_cast<int64_t>(records.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t i = 0; i < n; ++i) {
    outcomes[static_cast<size_t>(i)] = ScoreOne(records[static_cast<size_t>(i)], configs);
  }
  return Merge(outcomes);
}

namespace serial {

ScoreAllResult ScoreAll(std::span<const GenerationRecord> records,
                        std::span<const ScorerConfig> configs) {
  for (const auto& c : configs) ValidateConfig(c);
  std::vector<RecordOutcome> outcomes;
  outcomes.reserve(records.size());
  for (const auto& r : records) outcomes.push_back(ScoreOne(r, configs));
  return Merge(outcomes);
}

}  // namespace serial

Table ScoresToTable(std::span<const ScoreRow> rows) {
  Table t;
  t.header = {"record_id", "method", "score", "n_samples_used"};
  for (const auto& r : rows) {
    t.rows.push_back({r.record_id, r.method, FormatDouble(r.score),
                      std::to_string(r.n_samples_used)});
  }
  return t;
}

std::vector<ScoreRow> ScoresFromTable(const Table& table) {
  const size_t id = table.RequireColumn("record_id", "scores table");
  const size_t method = table.RequireColumn("method", "scores table");
  const size_t score = table.RequireColumn("score", "scores table");
  const size_t used = table.RequireColumn("n_samples_used", "scores table");
  std::vector<ScoreRow> rows;
  for (const auto& row : table.rows) {
    ScoreRow r;
    r.record_id = row[id];
    r.method = row[method];
    r.score = ParseDouble(row[score], "scores table score");
    r.n_samples_used = static_cast<int>(ParseDouble(row[used], "n_samples_used"));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ueval::scorers
