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

#ifndef UEVAL_RECORDS_H_
#define UEVAL_RECORDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueval/errors.h"
#include "ueval/table.h"

namespace ueval {

// Greedy or beam decoded answer y'.
struct AnswerSequence {
  std::string text;
  std::vector<double> token_logprobs;  // natural log

  bool operator==(const AnswerSequence&) const = default;
};

// One sampled sequence y^n with its optional per-sample annotations.
struct SampleGeneration {
  std::string text;
  std::vector<double> token_logprobs;
  std::optional<int64_t> cluster_id;
  std::optional<std::vector<double>> embedding;
  // Per-token relevance weights in [0, 1], aligned with token_logprobs.
  std::optional<std::vector<double>> token_relevance;

  bool operator==(const SampleGeneration&) const = default;
};

// Pairwise sentence similarity between the N samples of a record.
struct SimilarityData {
  std::optional<std::vector<std::vector<double>>> sentence_sim;

  bool operator==(const SimilarityData&) const = default;
};

struct GenerationRecord {
  std::string id;
  std::string dataset;
  std::string model;
  std::string question;
  std::optional<std::string> context;
  std::vector<std::string> references;
  AnswerSequence answer;
  std::vector<SampleGeneration> samples;
  SimilarityData similarity;
  std::optional<double> p_true_logprob;
  std::optional<int> ood_label;
  std::optional<int> exact_correct;
  std::optional<double> perturbation_strength;
  double sampling_temperature = 1.0;

  bool operator==(const GenerationRecord&) const = default;
};

// Throws a validation error naming the record id and the offending field.
void ValidateRecord(const GenerationRecord& record);

// Parses one log line. Unknown fields are reported through `diag`.
GenerationRecord ParseRecordLine(std::string_view line, Diagnostics* diag);
std::string RecordToLine(const GenerationRecord& record);

// Line-delimited generation log. Blank lines are skipped.
std::vector<GenerationRecord> LoadRecords(const std::filesystem::path& path,
                                          Diagnostics* diag = nullptr);
void WriteRecords(const std::filesystem::path& path,
                  std::span<const GenerationRecord> records);

// Method identifiers understood by the scorers, in canonical order.
std::span<const std::string_view> KnownMethods();
bool IsKnownMethod(std::string_view method);

// Names of the record fields a method needs but the record lacks. Empty when
// the method can score the record. Unknown methods raise a configuration
// error.
std::vector<std::string> CheckMethodRequirements(const GenerationRecord& record,
                                                 std::string_view method);

enum class Indicator { kSp, kSpMoji, kOod, kPerturb };

std::string_view IndicatorName(Indicator indicator);
Indicator ParseIndicator(std::string_view name);

// One cell of the experiment grid: performance of `method` on one
// (dataset, model) experiment against one risk indicator.
struct ExperimentResult {
  std::string method;
  std::string dataset;
  std::string model;
  Indicator indicator = Indicator::kSp;
  double value = 0.0;
  std::set<std::string> partition_tags;

  bool operator==(const ExperimentResult&) const = default;
};

void ValidateResult(const ExperimentResult& result);

Table ResultsToTable(std::span<const ExperimentResult> results);
std::vector<ExperimentResult> ResultsFromTable(const Table& table);
void WriteResults(const std::filesystem::path& path,
                  std::span<const ExperimentResult> results);
std::vector<ExperimentResult> ReadResults(const std::filesystem::path& path);

}  // namespace ueval

#endif  // UEVAL_RECORDS_H_
