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

#ifndef UEVAL_SCORERS_H_
#define UEVAL_SCORERS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueval/errors.h"
#include "ueval/records.h"
#include "ueval/table.h"

// Uncertainty scores for a GenerationRecord. Every score is in nats and
// higher means more uncertain.
namespace ueval::scorers {

enum class MethodKind {
  kPredictiveEntropy,
  kSemanticEntropy,
  kSentenceSar,
  kTokenSar,
  kSar,
  kEigenScore,
  kGNll,
  kPerplexity,
  kPTrue,
  kSequenceLength,
};

enum class SeVariant { kLikelihood, kLengthNormalized, kDiscrete };
enum class LengthMode { kChars, kTokens };
enum class LengthSource { kAnswer, kSamplesMean };

// How embeddings are centred before forming the N x N covariance.
//  kSamples:  each embedding dimension is centred across the N samples, so
//             identical embeddings give a zero covariance.
//  kFeatures: Z^T (I_d - 1_d / d) Z, i.e. each embedding is centred across
//             its own d components (the torch.cov convention).
enum class EigenCentering { kSamples, kFeatures };

struct ScorerConfig {
  std::string name;  // method id, used as the ScoreRow label
  MethodKind kind = MethodKind::kPredictiveEntropy;
  double tau = 1.0;
  double alpha = 1e-3;
  SeVariant se_variant = SeVariant::kLikelihood;
  LengthMode length_mode = LengthMode::kTokens;
  LengthSource length_source = LengthSource::kAnswer;
  bool length_normalized = false;
  EigenCentering centering = EigenCentering::kSamples;
};

// Builds the configuration for a method id (see KnownMethods()). Raises a
// configuration error for unknown ids or non-positive tau / alpha.
ScorerConfig ConfigFromName(std::string_view method, double tau = 1.0,
                            double alpha = 1e-3);
void ValidateConfig(const ScorerConfig& config);

struct ScoreRow {
  std::string record_id;
  std::string method;
  double score = 0.0;
  int n_samples_used = 0;

  bool operator==(const ScoreRow&) const = default;
};

double SequenceLogprob(const SampleGeneration& sample);
double PredictiveEntropy(std::span<const SampleGeneration> samples,
                         bool length_normalized);
double SemanticEntropy(std::span<const SampleGeneration> samples,
                       SeVariant variant);
double SentenceSar(std::span<const SampleGeneration> samples,
                   const SimilarityData& sim, double tau);
double TokenSar(const SampleGeneration& sample);
double Sar(std::span<const SampleGeneration> samples, const SimilarityData& sim,
           double tau);
double EigenScore(std::span<const SampleGeneration> samples, double alpha,
                  EigenCentering centering = EigenCentering::kSamples);
double GNll(const AnswerSequence& answer);
double Perplexity(std::span<const double> token_logprobs);
double PTrue(const GenerationRecord& record);
double SequenceLength(const GenerationRecord& record, LengthSource source,
                      LengthMode mode);

// The three forms of the EigenScore: log-determinant (Cholesky), log of the
// eigenvalue product, and mean log eigenvalue. Exposed for cross-checking.
struct EigenScoreForms {
  double log_det;
  double log_product;
  double sum_of_logs;
};
EigenScoreForms EigenScoreAllForms(std::span<const SampleGeneration> samples,
                                   double alpha, EigenCentering centering);

// Scores one record with one method; raises requirement / degenerate-input
// errors when the record cannot be scored.
ScoreRow ScoreRecord(const GenerationRecord& record, const ScorerConfig& config);

struct ScoreAllResult {
  std::vector<ScoreRow> rows;  // sorted by (record id, method)
  Diagnostics skipped;         // one entry per skipped (record, method) pair
};

// OpenMP-parallel over records.
ScoreAllResult ScoreAll(std::span<const GenerationRecord> records,
                        std::span<const ScorerConfig> configs);

namespace serial {
// Reference implementation kept for equivalence tests and benchmarks.
ScoreAllResult ScoreAll(std::span<const GenerationRecord> records,
                        std::span<const ScorerConfig> configs);
}  // namespace serial

Table ScoresToTable(std::span<const ScoreRow> rows);
std::vector<ScoreRow> ScoresFromTable(const Table& table);

}  // namespace ueval::scorers

#endif  // UEVAL_SCORERS_H_
