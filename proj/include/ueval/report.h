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

#ifndef UEVAL_REPORT_H_
#define UEVAL_REPORT_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueval/correctness.h"
#include "ueval/errors.h"
#include "ueval/table.h"

namespace ueval::report {

// Square matrix with row/column labels; undefined cells are nullopt.
struct LabeledMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> cells;

  bool operator==(const LabeledMatrix&) const = default;
};

// Cell (i, j) is the AUROC of the raw scores of column j against column i
// binarized at `threshold`, over rows where both are non-null. The diagonal
// is 1. Cells whose label column has a single class are undefined.
LabeledMatrix AgreementMatrix(const correctness::CorrectnessTable& table,
                              std::span<const std::string> columns,
                              double threshold = 0.5, Diagnostics* diag = nullptr);

// xi per method, under one correctness column.
using MethodXis = std::map<std::string, double>;

struct ColumnXis {
  std::string column;
  MethodXis xis;
};

// Cell (i, j) is the Spearman correlation over the methods common to columns
// i and j. Fewer than 3 common methods, or a constant ranking, leaves the cell
// undefined.
LabeledMatrix RankingAgreement(std::span<const ColumnXis> columns);

// Long-format xi table: dataset,model,column,method,value.
struct XiEntry {
  std::string dataset;
  std::string model;
  std::string column;
  std::string method;
  double value = 0.0;

  bool operator==(const XiEntry&) const = default;
};

Table XiEntriesToTable(std::span<const XiEntry> entries);
std::vector<XiEntry> XiEntriesFromTable(const Table& table);

// Ranking-agreement input for one (dataset, model) experiment, columns in
// first-appearance order.
std::vector<ColumnXis> ColumnsFor(std::span<const XiEntry> entries,
                                  std::string_view dataset, std::string_view model);

// dataset -> correctness column -> method -> xi.
using DatasetXis = std::map<std::string, std::map<std::string, MethodXis>>;

DatasetXis GroupByDataset(std::span<const XiEntry> entries);

// 1 + number of methods with a strictly larger xi.
int RankOf(const MethodXis& xis, const std::string& method);

struct AdversarialResult {
  std::string method;
  std::map<std::string, std::string> best_column;  // per dataset
  double top3_adversarial = 0.0;
  double top3_reference = 0.0;
  double increase = 0.0;

  bool operator==(const AdversarialResult&) const = default;
};

// For each dataset chooses the candidate column that puts `method` in the
// Top-3 (falling back to its best rank), and compares the Top-3 membership
// frequency with that under `reference_column`. `candidates` empty means every
// column except the reference.
AdversarialResult AdversarialSelection(const std::string& method, const DatasetXis& xis,
                                       const std::string& reference_column,
                                       std::span<const std::string> candidates = {});

// method,top3_adversarial,top3_reference,increase for every method.
Table AdversarialTable(const DatasetXis& xis, const std::string& reference_column,
                       std::span<const std::string> candidates = {});

// First header cell is "row"; undefined cells are written as "null".
Table MatrixToTable(const LabeledMatrix& matrix);
LabeledMatrix MatrixFromTable(const Table& table);

}  // namespace ueval::report

#endif  // UEVAL_REPORT_H_
