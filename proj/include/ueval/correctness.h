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

#ifndef UEVAL_CORRECTNESS_H_
#define UEVAL_CORRECTNESS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueval/errors.h"
#include "ueval/records.h"
#include "ueval/table.h"

namespace ueval::correctness {

// Lowercases, splits on whitespace and strips ASCII punctuation from both
// ends of every token. Tokens that become empty are dropped.
std::vector<std::string> Tokenize(std::string_view text);

// ROUGE-N F1 over n-gram multisets. With legacy_short_zero, returns 0 when
// either side has fewer than n tokens.
double RougeN(std::string_view candidate, std::string_view reference, int n,
              bool legacy_short_zero = false, Diagnostics* diag = nullptr);

// ROUGE-L F1 from the token-level longest common subsequence.
double RougeL(std::string_view candidate, std::string_view reference);

// Sentence BLEU: geometric mean of clipped n-gram precisions with brevity
// penalty against the closest reference length. Outside legacy mode the order
// is capped at the candidate length so short exact matches still score 1.
double Bleu(std::string_view candidate, std::span<const std::string> references,
            int max_n = 4, bool legacy_short_zero = false);

// 1 iff score >= d.
int Binarize(double score, double d);

double MojiMean(std::span<const std::optional<int>> verdicts);
double MojiEntropy(double mean);

enum class MetricKind { kRougeN, kRougeL, kBleu, kExact };

struct CorrectnessConfig {
  MetricKind kind = MetricKind::kRougeN;
  int n = 1;
  double threshold = 0.5;
  bool legacy_short_zero = false;
};

// Column naming: rouge1, rouge2, ..., rougeL, bleu4 (bleu<max_n>), exact.
std::string ColumnName(const CorrectnessConfig& config);
CorrectnessConfig ParseColumnSpec(std::string_view spec);

// Raw correctness score of one record under a metric; multiple references
// combine by maximum. Exact correctness is passed through from the record.
std::optional<double> ComputeCorrectness(const GenerationRecord& record,
                                         const CorrectnessConfig& config);

// Per-record correctness columns; values in {0,1} or [0,1], nullopt when
// unavailable.
struct CorrectnessTable {
  std::vector<std::string> record_ids;
  std::vector<std::string> column_names;
  std::vector<std::vector<std::optional<double>>> columns;

  size_t ColumnIndex(std::string_view name) const;
  const std::vector<std::optional<double>>& Column(std::string_view name) const;
  std::optional<size_t> RowIndex(std::string_view record_id) const;
  void AddColumn(std::string name, std::vector<std::optional<double>> values);
  void Validate() const;

  bool operator==(const CorrectnessTable&) const = default;
};

CorrectnessTable BuildCorrectnessTable(std::span<const GenerationRecord> records,
                                       std::span<const CorrectnessConfig> configs);

// Row-wise join of two tables on record id; columns of `other` are appended
// for matching ids and left null elsewhere.
CorrectnessTable MergeTables(const CorrectnessTable& base,
                             const CorrectnessTable& other);

Table CorrectnessToTable(const CorrectnessTable& table);
CorrectnessTable CorrectnessFromTable(const Table& table);
void WriteCorrectnessTable(const std::filesystem::path& path,
                           const CorrectnessTable& table);
CorrectnessTable ReadCorrectnessTable(const std::filesystem::path& path);

// Per-record MoJI mean over the given verdict columns (nullopt if all null).
std::vector<std::optional<double>> MojiColumn(
    const CorrectnessTable& table, std::span<const std::string> judge_columns);

// Ids whose MoJI entropy is <= threshold. Records without any verdict are
// dropped.
std::vector<std::string> FilterByEntropy(const CorrectnessTable& table,
                                         std::span<const std::string> judge_columns,
                                         double threshold);

}  // namespace ueval::correctness

#endif  // UEVAL_CORRECTNESS_H_
