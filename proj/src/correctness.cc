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

#include "ueval/correctness.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_map>

namespace ueval::correctness {
namespace {

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts CountNgrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (n <= 0 || tokens.size() < static_cast<size_t>(n)) return counts;
  for (size_t i = 0; i + static_cast<size_t>(n) <= tokens.size(); ++i) {
    std::vector<std::string> gram(tokens.begin() + static_cast<ptrdiff_t>(i),
                                  tokens.begin() + static_cast<ptrdiff_t>(i) + n);
    ++counts[std::move(gram)];
  }
  return counts;
}

int Total(const NgramCounts& counts) {
  int total = 0;
  for (const auto& [gram, c] : counts) total += c;
  return total;
}

double F1(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

size_t Lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    size_t begin = 0, end = current.size();
    while (begin < end && std::ispunct(static_cast<unsigned char>(current[begin]))) {
      ++begin;
    }
    while (end > begin && std::ispunct(static_cast<unsigned char>(current[end - 1]))) {
      --end;
    }
    if (end > begin) tokens.push_back(current.substr(begin, end - begin));
    current.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  flush();
  return tokens;
}

double RougeN(std::string_view candidate, std::string_view reference, int n,
              bool legacy_short_zero, Diagnostics* diag) {
  if (n < 1) Fail(ErrorKind::kConfiguration, "rouge_n requires n >= 1");
  const auto cand = Tokenize(candidate);
  const auto ref = Tokenize(reference);
  const size_t need = static_cast<size_t>(n);
  if (cand.size() < need || ref.size() < need) {
    if (!legacy_short_zero && diag != nullptr && !cand.empty() && !ref.empty()) {
      diag->Warn("rouge" + std::to_string(n) + ": no " + std::to_string(n) +
                 "-gram on one side ('" + std::string(candidate) + "' vs '" +
                 std::string(reference) + "'), scoring 0");
    }
    return 0.0;
  }
  const NgramCounts c = CountNgrams(cand, n);
  const NgramCounts r = CountNgrams(ref, n);
  int overlap = 0;
  for (const auto& [gram, count] : c) {
    if (auto it = r.find(gram); it != r.end()) overlap += std::min(count, it->second);
  }
  return F1(static_cast<double>(overlap) / Total(c),
            static_cast<double>(overlap) / Total(r));
}

double RougeL(std::string_view candidate, std::string_view reference) {
  const auto cand = Tokenize(candidate);
  const auto ref = Tokenize(reference);
  if (cand.empty() || ref.empty()) return 0.0;
  const double lcs = static_cast<double>(Lcs(cand, ref));
  return F1(lcs / static_cast<double>(cand.size()), lcs / static_cast<double>(ref.size()));
}

double Bleu(std::string_view candidate, std::span<const std::string> references,
            int max_n, bool legacy_short_zero) {
  if (max_n < 1) Fail(ErrorKind::kConfiguration, "bleu requires max_n >= 1");
  const auto cand = Tokenize(candidate);
  std::vector<std::vector<std::string>> refs;
  for (const auto& r : references) refs.push_back(Tokenize(r));
  if (cand.empty() || refs.empty()) return 0.0;

  const size_t need = static_cast<size_t>(max_n);
  if (legacy_short_zero) {
    const bool all_refs_short = std::all_of(
        refs.begin(), refs.end(), [need](const auto& r) { return r.size() < need; });
    if (cand.size() < need || all_refs_short) return 0.0;
  }
  const int order = legacy_short_zero
                        ? max_n
                        : std::min(max_n, static_cast<int>(cand.size()));

  double log_precision_sum = 0.0;
  for (int n = 1; n <= order; ++n) {
    const NgramCounts c = CountNgrams(cand, n);
    NgramCounts max_ref;
    for (const auto& r : refs) {
      for (const auto& [gram, count] : CountNgrams(r, n)) {
        int& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    int clipped = 0;
    for (const auto& [gram, count] : c) {
      if (auto it = max_ref.find(gram); it != max_ref.end()) {
        clipped += std::min(count, it->second);
      }
    }
    const int total = Total(c);
    if (clipped == 0 || total == 0) return 0.0;
    log_precision_sum += std::log(static_cast<double>(clipped) / total);
  }

  // Closest reference length; ties go to the shorter reference.
  const double c_len = static_cast<double>(cand.size());
  double r_len = static_cast<double>(refs.front().size());
  for (const auto& r : refs) {
    const double len = static_cast<double>(r.size());
    if (std::abs(len - c_len) < std::abs(r_len - c_len) ||
        (std::abs(len - c_len) == std::abs(r_len - c_len) && len < r_len)) {
      r_len = len;
    }
  }
  const double brevity = c_len >= r_len ? 1.0 : std::exp(1.0 - r_len / c_len);
  return brevity * std::exp(log_precision_sum / order);
}

int Binarize(double score, double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    Fail(ErrorKind::kConfiguration, "threshold must lie in [0,1]");
  }
  return score >= d ? 1 : 0;
}

double MojiMean(std::span<const std::optional<int>> verdicts) {
  int count = 0, positive = 0;
  for (const auto& v : verdicts) {
    if (!v) continue;
    ++count;
    positive += *v != 0 ? 1 : 0;
  }
  if (count == 0) Fail(ErrorKind::kMissingData, "all judge verdicts are null");
  return static_cast<double>(positive) / count;
}

double MojiEntropy(double mean) {
  if (!(mean >= 0.0 && mean <= 1.0)) {
    Fail(ErrorKind::kValidation, "MoJI mean must lie in [0,1]");
  }
  auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return term(mean) + term(1.0 - mean);
}

std::string ColumnName(const CorrectnessConfig& config) {
  switch (config.kind) {
    case MetricKind::kRougeN:
      return "rouge" + std::to_string(config.n);
    case MetricKind::kRougeL:
      return "rougeL";
    case MetricKind::kBleu:
      return "bleu" + std::to_string(config.n);
    case MetricKind::kExact:
      return "exact";
  }
  return "?";
}

CorrectnessConfig ParseColumnSpec(std::string_view spec) {
  CorrectnessConfig c;
  auto parse_order = [&](std::string_view digits) {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      Fail(ErrorKind::kConfiguration, "bad correctness metric '" + std::string(spec) + "'");
    }
    int n = std::stoi(std::string(digits));
    if (n < 1) Fail(ErrorKind::kConfiguration, "n-gram order must be >= 1");
    return n;
  };
  if (spec == "exact") {
    c.kind = MetricKind::kExact;
  } else if (spec == "rougeL" || spec == "rougel") {
    c.kind = MetricKind::kRougeL;
  } else if (spec.starts_with("rouge")) {
    c.kind = MetricKind::kRougeN;
    c.n = parse_order(spec.substr(5));
  } else if (spec.starts_with("bleu")) {
    c.kind = MetricKind::kBleu;
    c.n = spec.size() == 4 ? 4 : parse_order(spec.substr(4));
  } else {
    Fail(ErrorKind::kConfiguration, "unknown correctness metric '" + std::string(spec) + "'");
  }
  return c;
}

std::optional<double> ComputeCorrectness(const GenerationRecord& record,
                                         const CorrectnessConfig& config) {
  if (config.kind == MetricKind::kExact) {
    if (!record.exact_correct) return std::nullopt;
    return static_cast<double>(*record.exact_correct);
  }
  if (record.references.empty()) return std::nullopt;
  const std::string& answer = record.answer.text;
  if (config.kind == MetricKind::kBleu) {
    return Bleu(answer, record.references, config.n, config.legacy_short_zero);
  }
  double best = 0.0;
  for (const auto& ref : record.references) {
    const double s = config.kind == MetricKind::kRougeL
                         ? RougeL(answer, ref)
                         : RougeN(answer, ref, config.n, config.legacy_short_zero);
    best = std::max(best, s);
  }
  return best;
}

size_t CorrectnessTable::ColumnIndex(std::string_view name) const {
  for (size_t i = 0; i < column_names.size(); ++i) {
    if (column_names[i] == name) return i;
  }
  Fail(ErrorKind::kValidation, "correctness table has no column '" + std::string(name) + "'");
}

const std::vector<std::optional<double>>& CorrectnessTable::Column(
    std::string_view name) const {
  return columns[ColumnIndex(name)];
}

std::optional<size_t> CorrectnessTable::RowIndex(std::string_view record_id) const {
  for (size_t i = 0; i < record_ids.size(); ++i) {
    if (record_ids[i] == record_id) return i;
  }
  return std::nullopt;
}

void CorrectnessTable::AddColumn(std::string name,
                                 std::vector<std::optional<double>> values) {
  if (values.size() != record_ids.size()) {
    Fail(ErrorKind::kShape, "column '" + name + "' has " +
                                std::to_string(values.size()) + " values for " +
                                std::to_string(record_ids.size()) + " records");
  }
  column_names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

void CorrectnessTable::Validate() const {
  if (columns.size() != column_names.size()) {
    Fail(ErrorKind::kShape, "correctness table column count mismatch");
  }
  for (size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != record_ids.size()) {
      Fail(ErrorKind::kShape, "column '" + column_names[c] + "' length mismatch");
    }
    for (const auto& v : columns[c]) {
      if (v && !(*v >= 0.0 && *v <= 1.0)) {
        Fail(ErrorKind::kValidation,
             "column '" + column_names[c] + "' has value outside [0,1]");
      }
    }
  }
}

CorrectnessTable BuildCorrectnessTable(std::span<const GenerationRecord> records,
                                       std::span<const CorrectnessConfig> configs) {
  CorrectnessTable table;
  for (const auto& r : records) table.record_ids.push_back(r.id);
  for (const auto& config : configs) {
    std::vector<std::optional<double>> values(records.size());
    const int64_t n = static_cast<int64_t>(records.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (int64_t i = 0; i < n; ++i) {
      values[static_cast<size_t>(i)] =
          ComputeCorrectness(records[static_cast<size_t>(i)], config);
    }
    table.AddColumn(ColumnName(config), std::move(values));
  }
  return table;
}

CorrectnessTable MergeTables(const CorrectnessTable& base,
                             const CorrectnessTable& other) {
  CorrectnessTable out = base;
  std::unordered_map<std::string, size_t> other_rows;
  for (size_t i = 0; i < other.record_ids.size(); ++i) other_rows[other.record_ids[i]] = i;
  for (size_t c = 0; c < other.columns.size(); ++c) {
    std::vector<std::optional<double>> values(out.record_ids.size());
    for (size_t i = 0; i < out.record_ids.size(); ++i) {
      if (auto it = other_rows.find(out.record_ids[i]); it != other_rows.end()) {
        values[i] = other.columns[c][it->second];
      }
    }
    out.AddColumn(other.column_names[c], std::move(values));
  }
  return out;
}

Table CorrectnessToTable(const CorrectnessTable& table) {
  Table t;
  t.header.push_back("record_id");
  for (const auto& name : table.column_names) t.header.push_back(name);
  for (size_t i = 0; i < table.record_ids.size(); ++i) {
    std::vector<std::string> row{table.record_ids[i]};
    for (const auto& col : table.columns) {
      row.push_back(col[i] ? FormatDouble(*col[i]) : "null");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CorrectnessTable CorrectnessFromTable(const Table& t) {
  const size_t id = t.RequireColumn("record_id", "correctness table");
  CorrectnessTable table;
  for (const auto& row : t.rows) table.record_ids.push_back(row[id]);
  for (size_t c = 0; c < t.header.size(); ++c) {
    if (c == id) continue;
    std::vector<std::optional<double>> values;
    for (const auto& row : t.rows) {
      const std::string& cell = row[c];
      if (cell == "null" || cell.empty()) {
        values.emplace_back();
      } else {
        values.emplace_back(ParseDouble(cell, "correctness column " + t.header[c]));
      }
    }
    table.AddColumn(t.header[c], std::move(values));
  }
  table.Validate();
  return table;
}

void WriteCorrectnessTable(const std::filesystem::path& path,
                           const CorrectnessTable& table) {
  WriteTable(CorrectnessToTable(table), path);
}

CorrectnessTable ReadCorrectnessTable(const std::filesystem::path& path) {
  return CorrectnessFromTable(ReadTable(path));
}

std::vector<std::optional<double>> MojiColumn(
    const CorrectnessTable& table, std::span<const std::string> judge_columns) {
  std::vector<const std::vector<std::optional<double>>*> cols;
  for (const auto& name : judge_columns) cols.push_back(&table.Column(name));
  std::vector<std::optional<double>> out(table.record_ids.size());
  for (size_t i = 0; i < out.size(); ++i) {
    std::vector<std::optional<int>> verdicts;
    for (const auto* col : cols) {
      if ((*col)[i]) verdicts.push_back(Binarize(*(*col)[i], 0.5));
      else verdicts.emplace_back();
    }
    try {
      out[i] = MojiMean(verdicts);
    } catch (const Error&) {
      out[i] = std::nullopt;
    }
  }
  return out;
}

std::vector<std::string> FilterByEntropy(const CorrectnessTable& table,
                                         std::span<const std::string> judge_columns,
                                         double threshold) {
  const auto moji = MojiColumn(table, judge_columns);
  std::vector<std::string> kept;
  for (size_t i = 0; i < moji.size(); ++i) {
    // Small slack so threshold = ln 2 keeps maximally split records.
    if (moji[i] && MojiEntropy(*moji[i]) <= threshold + 1e-12) {
      kept.push_back(table.record_ids[i]);
    }
  }
  return kept;
}

}  // namespace ueval::correctness
