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

#include "ueval/report.h"

#include <algorithm>
#include <set>

#include "ueval/riskmetrics.h"

namespace ueval::report {

LabeledMatrix AgreementMatrix(const correctness::CorrectnessTable& table,
                              std::span<const std::string> columns, double threshold,
                              Diagnostics* diag) {
  LabeledMatrix m;
  if (columns.empty()) {
    m.labels = table.column_names;
  } else {
    m.labels.assign(columns.begin(), columns.end());
  }
  if (m.labels.size() < 2) {
    Fail(ErrorKind::kValidation, "agreement matrix needs at least 2 columns");
  }
  const size_t k = m.labels.size();
  m.cells.assign(k, std::vector<std::optional<double>>(k));
  for (size_t i = 0; i < k; ++i) {
    const auto labels = risk::BinarizeColumn(table.Column(m.labels[i]), threshold);
    for (size_t j = 0; j < k; ++j) {
      if (i == j) {
        m.cells[i][j] = 1.0;
        continue;
      }
      const auto& scores = table.Column(m.labels[j]);
      std::vector<double> s;
      std::vector<int> y;
      for (size_t r = 0; r < scores.size(); ++r) {
        if (!scores[r] || !labels[r]) continue;
        s.push_back(*scores[r]);
        y.push_back(*labels[r]);
      }
      try {
        m.cells[i][j] = risk::Auroc(s, y);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kUndefinedMetric) throw;
        if (diag != nullptr) {
          diag->Warn("agreement: cell (" + m.labels[i] + ", " + m.labels[j] + ") undefined");
        }
      }
    }
  }
  return m;
}

LabeledMatrix RankingAgreement(std::span<const ColumnXis> columns) {
  if (columns.size() < 2) {
    Fail(ErrorKind::kValidation, "ranking agreement needs at least 2 columns");
  }
  LabeledMatrix m;
  for (const auto& c : columns) m.labels.push_back(c.column);
  const size_t k = columns.size();
  m.cells.assign(k, std::vector<std::optional<double>>(k));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      std::vector<double> a, b;
      for (const auto& [method, xi] : columns[i].xis) {
        if (auto it = columns[j].xis.find(method); it != columns[j].xis.end()) {
          a.push_back(xi);
          b.push_back(it->second);
        }
      }
      if (a.size() < 3) continue;
      try {
        m.cells[i][j] = risk::Spearman(a, b);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kUndefinedMetric) throw;
      }
    }
  }
  return m;
}

Table XiEntriesToTable(std::span<const XiEntry> entries) {
  Table t;
  t.header = {"dataset", "model", "column", "method", "value"};
  for (const auto& e : entries) {
    t.rows.push_back({e.dataset, e.model, e.column, e.method, FormatDouble(e.value)});
  }
  return t;
}

std::vector<XiEntry> XiEntriesFromTable(const Table& t) {
  const size_t d = t.RequireColumn("dataset", "xi table");
  const size_t mo = t.RequireColumn("model", "xi table");
  const size_t c = t.RequireColumn("column", "xi table");
  const size_t me = t.RequireColumn("method", "xi table");
  const size_t v = t.RequireColumn("value", "xi table");
  std::vector<XiEntry> out;
  for (const auto& row : t.rows) {
    out.push_back({row[d], row[mo], row[c], row[me], ParseDouble(row[v], "xi table value")});
  }
  return out;
}

std::vector<ColumnXis> ColumnsFor(std::span<const XiEntry> entries, std::string_view dataset,
                                  std::string_view model) {
  std::vector<ColumnXis> out;
  for (const auto& e : entries) {
    if (e.dataset != dataset || e.model != model) continue;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const ColumnXis& c) { return c.column == e.column; });
    if (it == out.end()) {
      out.push_back({e.column, {}});
      it = out.end() - 1;
    }
    it->xis[e.method] = e.value;
  }
  return out;
}

DatasetXis GroupByDataset(std::span<const XiEntry> entries) {
  DatasetXis out;
  for (const auto& e : entries) out[e.dataset][e.column][e.method] = e.value;
  return out;
}

int RankOf(const MethodXis& xis, const std::string& method) {
  auto it = xis.find(method);
  if (it == xis.end()) Fail(ErrorKind::kValidation, "method '" + method + "' has no xi");
  int rank = 1;
  for (const auto& [other, xi] : xis) {
    if (xi > it->second) ++rank;
  }
  return rank;
}

AdversarialResult AdversarialSelection(const std::string& method, const DatasetXis& xis,
                                       const std::string& reference_column,
                                       std::span<const std::string> candidates) {
  if (xis.empty()) Fail(ErrorKind::kValidation, "adversarial selection: no datasets");
  AdversarialResult result;
  result.method = method;
  int adversarial_hits = 0, reference_hits = 0;
  for (const auto& [dataset, by_column] : xis) {
    auto check = [&](const std::string& column) -> const MethodXis& {
      auto it = by_column.find(column);
      if (it == by_column.end()) {
        Fail(ErrorKind::kValidation,
             "dataset '" + dataset + "' has no xi under column '" + column + "'");
      }
      if (it->second.size() < 3) {
        Fail(ErrorKind::kValidation, "dataset '" + dataset + "', column '" + column +
                                         "': Top-3 needs at least 3 methods");
      }
      return it->second;
    };
    if (RankOf(check(reference_column), method) <= 3) ++reference_hits;

    std::vector<std::string> pool;
    if (candidates.empty()) {
      for (const auto& [column, unused] : by_column) {
        if (column != reference_column) pool.push_back(column);
      }
    } else {
      pool.assign(candidates.begin(), candidates.end());
    }
    if (pool.empty()) {
      Fail(ErrorKind::kValidation, "dataset '" + dataset + "' has no candidate columns");
    }
    std::string best;
    int best_rank = 0;
    for (const auto& column : pool) {
      const int rank = RankOf(check(column), method);
      if (best.empty() || rank < best_rank) {
        best = column;
        best_rank = rank;
      }
    }
    result.best_column[dataset] = best;
    if (best_rank <= 3) ++adversarial_hits;
  }
  const double n = static_cast<double>(xis.size());
  result.top3_adversarial = adversarial_hits / n;
  result.top3_reference = reference_hits / n;
  result.increase = result.top3_adversarial - result.top3_reference;
  return result;
}

Table AdversarialTable(const DatasetXis& xis, const std::string& reference_column,
                       std::span<const std::string> candidates) {
  std::set<std::string> methods;
  for (const auto& [dataset, by_column] : xis) {
    for (const auto& [column, by_method] : by_column) {
      for (const auto& [method, xi] : by_method) methods.insert(method);
    }
  }
  Table t;
  t.header = {"method", "top3_adversarial", "top3_reference", "increase"};
  for (const auto& method : methods) {
    const AdversarialResult r = AdversarialSelection(method, xis, reference_column, candidates);
    t.rows.push_back({method, FormatDouble(r.top3_adversarial),
                      FormatDouble(r.top3_reference), FormatDouble(r.increase)});
  }
  return t;
}

Table MatrixToTable(const LabeledMatrix& m) {
  Table t;
  t.header.push_back("row");
  for (const auto& l : m.labels) t.header.push_back(l);
  for (size_t i = 0; i < m.labels.size(); ++i) {
    std::vector<std::string> row{m.labels[i]};
    for (const auto& cell : m.cells[i]) row.push_back(cell ? FormatDouble(*cell) : "null");
    t.rows.push_back(std::move(row));
  }
  return t;
}

LabeledMatrix MatrixFromTable(const Table& t) {
  if (t.header.empty() || t.header[0] != "row") {
    Fail(ErrorKind::kParse, "matrix table must start with a 'row' column");
  }
  LabeledMatrix m;
  m.labels.assign(t.header.begin() + 1, t.header.end());
  if (t.rows.size() != m.labels.size()) Fail(ErrorKind::kShape, "matrix table is not square");
  for (size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i][0] != m.labels[i]) {
      Fail(ErrorKind::kParse, "matrix row label '" + t.rows[i][0] + "' does not match header");
    }
    std::vector<std::optional<double>> row;
    for (size_t j = 1; j < t.rows[i].size(); ++j) {
      const std::string& cell = t.rows[i][j];
      row.push_back(cell == "null" ? std::nullopt
                                   : std::optional<double>(ParseDouble(cell, "matrix cell")));
    }
    m.cells.push_back(std::move(row));
  }
  return m;
}

}  // namespace ueval::report
