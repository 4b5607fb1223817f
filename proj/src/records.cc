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

#include "ueval/records.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ueval {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 14> kMethods = {
    "predictive_entropy",      "predictive_entropy_ln",
    "semantic_entropy",        "semantic_entropy_ln",
    "semantic_entropy_discrete", "sentence_sar",
    "token_sar",               "sar",
    "eigenscore",              "g_nll",
    "perplexity",              "p_true",
    "sequence_length_answer",  "sequence_length_samples",
};

constexpr std::array<std::string_view, 15> kRecordFields = {
    "id",          "dataset",        "model",
    "question",    "context",        "references",
    "answer",      "samples",        "sentence_sim",
    "p_true_logprob", "ood_label",   "exact_correct",
    "perturbation_strength", "sampling_temperature", "similarity",
};

constexpr std::array<std::string_view, 5> kSampleFields = {
    "text", "token_logprobs", "cluster_id", "embedding", "token_relevance"};

[[noreturn]] void Invalid(const std::string& id, const std::string& field,
                          const std::string& what) {
  Fail(ErrorKind::kValidation,
       "record '" + id + "' field '" + field + "': " + what);
}

void CheckLogprobs(const std::string& id, const std::string& field,
                   const std::vector<double>& logprobs) {
  for (size_t t = 0; t < logprobs.size(); ++t) {
    if (std::isnan(logprobs[t]) || logprobs[t] > 0.0) {
      Invalid(id, field + "[" + std::to_string(t) + "]",
              "token log-probability must be <= 0, got " +
                  FormatDouble(logprobs[t]));
    }
  }
}

int ParseBinary(const json& value, const std::string& name) {
  if (value.is_boolean()) return value.get<bool>() ? 1 : 0;
  if (value.is_number_integer() || value.is_number_unsigned()) {
    int v = value.get<int>();
    if (v == 0 || v == 1) return v;
  }
  if (value.is_number_float()) {
    double v = value.get<double>();
    if (v == 0.0 || v == 1.0) return static_cast<int>(v);
  }
  Fail(ErrorKind::kValidation, "field '" + name + "' must be binary (0/1)");
}

std::vector<double> ParseRealList(const json& value, const std::string& name) {
  if (!value.is_array()) {
    Fail(ErrorKind::kValidation, "field '" + name + "' must be a list of numbers");
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_number()) {
      Fail(ErrorKind::kValidation, "field '" + name + "' must contain numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

template <typename T>
std::optional<T> OptionalField(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return it->template get<T>();
}

void WarnUnknown(const json& obj, std::span<const std::string_view> known,
                 const std::string& where, Diagnostics* diag) {
  if (diag == nullptr) return;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      diag->Warn(where + ": ignoring unknown field '" + it.key() + "'");
    }
  }
}

GenerationRecord RecordFromJson(const json& obj, Diagnostics* diag) {
  if (!obj.is_object()) {
    Fail(ErrorKind::kParse, "record must be a JSON object");
  }
  GenerationRecord r;
  auto required_string = [&](std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
      Fail(ErrorKind::kValidation,
           "record '" + obj.value("id", std::string("?")) +
               "' missing string field '" + std::string(key) + "'");
    }
    return it->get<std::string>();
  };
  r.id = required_string("id");
  r.dataset = required_string("dataset");
  r.model = required_string("model");
  try {
    r.question = required_string("question");
    r.context = OptionalField<std::string>(obj, "context");
    if (auto it = obj.find("references"); it != obj.end() && !it->is_null()) {
      r.references = it->get<std::vector<std::string>>();
    }
    auto answer = obj.find("answer");
    if (answer == obj.end() || !answer->is_object()) {
      Invalid(r.id, "answer", "required object");
    }
    r.answer.text = answer->value("text", std::string());
    if (auto lp = answer->find("token_logprobs"); lp != answer->end()) {
      r.answer.token_logprobs = ParseRealList(*lp, "answer.token_logprobs");
    }
    if (auto it = obj.find("samples"); it != obj.end() && !it->is_null()) {
      if (!it->is_array()) Invalid(r.id, "samples", "must be a list");
      for (size_t n = 0; n < it->size(); ++n) {
        const json& s = (*it)[n];
        const std::string where = "samples[" + std::to_string(n) + "]";
        if (!s.is_object()) Invalid(r.id, where, "must be an object");
        WarnUnknown(s, kSampleFields, "record '" + r.id + "' " + where, diag);
        SampleGeneration sample;
        sample.text = s.value("text", std::string());
        if (auto lp = s.find("token_logprobs"); lp != s.end()) {
          sample.token_logprobs = ParseRealList(*lp, where + ".token_logprobs");
        }
        sample.cluster_id = OptionalField<int64_t>(s, "cluster_id");
        if (auto e = s.find("embedding"); e != s.end() && !e->is_null()) {
          sample.embedding = ParseRealList(*e, where + ".embedding");
        }
        if (auto e = s.find("token_relevance"); e != s.end() && !e->is_null()) {
          sample.token_relevance = ParseRealList(*e, where + ".token_relevance");
        }
        r.samples.push_back(std::move(sample));
      }
    }
    const json* sim = nullptr;
    if (auto it = obj.find("sentence_sim"); it != obj.end() && !it->is_null()) {
      sim = &*it;
    } else if (auto s = obj.find("similarity");
               s != obj.end() && s->is_object()) {
      if (auto it2 = s->find("sentence_sim");
          it2 != s->end() && !it2->is_null()) {
        sim = &*it2;
      }
    }
    if (sim != nullptr) {
      if (!sim->is_array()) Invalid(r.id, "sentence_sim", "must be a matrix");
      std::vector<std::vector<double>> m;
      for (const auto& row : *sim) m.push_back(ParseRealList(row, "sentence_sim"));
      r.similarity.sentence_sim = std::move(m);
    }
    r.p_true_logprob = OptionalField<double>(obj, "p_true_logprob");
    if (auto it = obj.find("ood_label"); it != obj.end() && !it->is_null()) {
      r.ood_label = ParseBinary(*it, "ood_label");
    }
    if (auto it = obj.find("exact_correct"); it != obj.end() && !it->is_null()) {
      r.exact_correct = ParseBinary(*it, "exact_correct");
    }
    r.perturbation_strength = OptionalField<double>(obj, "perturbation_strength");
    auto temp = obj.find("sampling_temperature");
    if (temp == obj.end() || !temp->is_number()) {
      Invalid(r.id, "sampling_temperature", "required number");
    }
    r.sampling_temperature = temp->get<double>();
  } catch (const json::exception& e) {
    Invalid(r.id, "?", e.what());
  }
  WarnUnknown(obj, kRecordFields, "record '" + r.id + "'", diag);
  return r;
}

json RecordToJson(const GenerationRecord& r) {
  json obj;
  obj["id"] = r.id;
  obj["dataset"] = r.dataset;
  obj["model"] = r.model;
  obj["question"] = r.question;
  if (r.context) obj["context"] = *r.context;
  obj["references"] = r.references;
  obj["answer"] = {{"text", r.answer.text},
                   {"token_logprobs", r.answer.token_logprobs}};
  json samples = json::array();
  for (const auto& s : r.samples) {
    json js;
    js["text"] = s.text;
    js["token_logprobs"] = s.token_logprobs;
    if (s.cluster_id) js["cluster_id"] = *s.cluster_id;
    if (s.embedding) js["embedding"] = *s.embedding;
    if (s.token_relevance) js["token_relevance"] = *s.token_relevance;
    samples.push_back(std::move(js));
  }
  obj["samples"] = std::move(samples);
  if (r.similarity.sentence_sim) obj["sentence_sim"] = *r.similarity.sentence_sim;
  if (r.p_true_logprob) obj["p_true_logprob"] = *r.p_true_logprob;
  if (r.ood_label) obj["ood_label"] = *r.ood_label;
  if (r.exact_correct) obj["exact_correct"] = *r.exact_correct;
  if (r.perturbation_strength) {
    obj["perturbation_strength"] = *r.perturbation_strength;
  }
  obj["sampling_temperature"] = r.sampling_temperature;
  return obj;
}

bool AllSamples(const GenerationRecord& r, auto pred) {
  return std::all_of(r.samples.begin(), r.samples.end(), pred);
}

}  // namespace

void ValidateRecord(const GenerationRecord& r) {
  if (r.id.empty()) Fail(ErrorKind::kValidation, "record with empty id");
  CheckLogprobs(r.id, "answer.token_logprobs", r.answer.token_logprobs);
  std::optional<size_t> embedding_dim;
  for (size_t n = 0; n < r.samples.size(); ++n) {
    const auto& s = r.samples[n];
    const std::string where = "samples[" + std::to_string(n) + "]";
    CheckLogprobs(r.id, where + ".token_logprobs", s.token_logprobs);
    if (s.cluster_id && *s.cluster_id < 0) {
      Invalid(r.id, where + ".cluster_id", "must be non-negative");
    }
    if (s.token_relevance) {
      if (s.token_relevance->size() != s.token_logprobs.size()) {
        Invalid(r.id, where + ".token_relevance",
                "length " + std::to_string(s.token_relevance->size()) +
                    " differs from token_logprobs length " +
                    std::to_string(s.token_logprobs.size()));
      }
      for (double w : *s.token_relevance) {
        if (!(w >= 0.0 && w <= 1.0)) {
          Invalid(r.id, where + ".token_relevance", "values must lie in [0,1]");
        }
      }
    }
    if (s.embedding) {
      for (double v : *s.embedding) {
        if (!std::isfinite(v)) Invalid(r.id, where + ".embedding", "non-finite value");
      }
      if (embedding_dim && *embedding_dim != s.embedding->size()) {
        Invalid(r.id, where + ".embedding",
                "dimension " + std::to_string(s.embedding->size()) +
                    " differs from " + std::to_string(*embedding_dim));
      }
      embedding_dim = s.embedding->size();
    }
  }
  if (r.similarity.sentence_sim) {
    const auto& m = *r.similarity.sentence_sim;
    const size_t side = m.size();
    for (size_t i = 0; i < side; ++i) {
      if (m[i].size() != side) Invalid(r.id, "sentence_sim", "matrix is not square");
    }
    for (size_t i = 0; i < side; ++i) {
      if (std::abs(m[i][i] - 1.0) > 1e-9) {
        Invalid(r.id, "sentence_sim", "diagonal must be 1");
      }
      for (size_t j = 0; j < side; ++j) {
        if (!(m[i][j] >= 0.0 && m[i][j] <= 1.0)) {
          Invalid(r.id, "sentence_sim", "values must lie in [0,1]");
        }
        if (std::abs(m[i][j] - m[j][i]) > 1e-9) {
          Invalid(r.id, "sentence_sim", "matrix must be symmetric");
        }
      }
    }
  }
  if (r.p_true_logprob && (std::isnan(*r.p_true_logprob) || *r.p_true_logprob > 0.0)) {
    Invalid(r.id, "p_true_logprob", "must be <= 0");
  }
  if (r.perturbation_strength &&
      !(*r.perturbation_strength >= 0.0 && *r.perturbation_strength <= 1.0)) {
    Invalid(r.id, "perturbation_strength", "must lie in [0,1]");
  }
  if (!(r.sampling_temperature > 0.0)) {
    Invalid(r.id, "sampling_temperature", "must be > 0");
  }
}

GenerationRecord ParseRecordLine(std::string_view line, Diagnostics* diag) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kParse, e.what());
  }
  GenerationRecord r = RecordFromJson(obj, diag);
  ValidateRecord(r);
  return r;
}

std::string RecordToLine(const GenerationRecord& record) {
  return RecordToJson(record).dump();
}

std::vector<GenerationRecord> LoadRecords(const std::filesystem::path& path,
                                          Diagnostics* diag) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  std::vector<GenerationRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(ParseRecordLine(line, diag));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kParse) {
        Fail(ErrorKind::kParse, path.string() + ":" + std::to_string(line_no) +
                                    ": " + e.what());
      }
      throw;
    }
  }
  if (in.bad()) Fail(ErrorKind::kIo, "failed reading '" + path.string() + "'");
  return records;
}

void WriteRecords(const std::filesystem::path& path,
                  std::span<const GenerationRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += RecordToLine(r);
    out.push_back('\n');
  }
  WriteFile(path, out);
}

std::span<const std::string_view> KnownMethods() { return kMethods; }

bool IsKnownMethod(std::string_view method) {
  return std::find(kMethods.begin(), kMethods.end(), method) != kMethods.end();
}

std::vector<std::string> CheckMethodRequirements(const GenerationRecord& r,
                                                 std::string_view method) {
  if (!IsKnownMethod(method)) {
    Fail(ErrorKind::kConfiguration, "unknown method '" + std::string(method) + "'");
  }
  std::vector<std::string> missing;
  const bool has_samples = !r.samples.empty();
  auto need_samples = [&] {
    if (!has_samples) missing.push_back("samples (N>=1)");
  };
  auto need_sample_tokens = [&] {
    if (!AllSamples(r, [](const auto& s) { return !s.token_logprobs.empty(); })) {
      missing.push_back("samples.token_logprobs (non-empty)");
    }
  };
  auto need_relevance = [&] {
    if (!AllSamples(r, [](const auto& s) { return s.token_relevance.has_value(); })) {
      missing.push_back("token_relevance");
    } else if (!AllSamples(r, [](const auto& s) {
                 double total = 0.0;
                 for (double w : *s.token_relevance) total += w;
                 return total > 0.0;
               })) {
      missing.push_back("token_relevance (non-zero sum)");
    }
  };
  auto need_sim = [&] {
    const auto& sim = r.similarity.sentence_sim;
    if (!sim) {
      missing.push_back("sentence_sim");
    } else if (sim->size() != r.samples.size()) {
      missing.push_back("sentence_sim (side N)");
    }
  };

  if (method == "predictive_entropy" || method == "predictive_entropy_ln") {
    need_samples();
    need_sample_tokens();
  } else if (method == "semantic_entropy" || method == "semantic_entropy_ln" ||
             method == "semantic_entropy_discrete") {
    need_samples();
    if (!AllSamples(r, [](const auto& s) { return s.cluster_id.has_value(); })) {
      missing.push_back("cluster_id");
    }
    if (method != "semantic_entropy_discrete") need_sample_tokens();
  } else if (method == "sentence_sar") {
    need_samples();
    need_sample_tokens();
    need_sim();
  } else if (method == "token_sar") {
    need_samples();
    need_sample_tokens();
    need_relevance();
  } else if (method == "sar") {
    need_samples();
    need_sample_tokens();
    need_relevance();
    need_sim();
  } else if (method == "eigenscore") {
    need_samples();
    if (!AllSamples(r, [](const auto& s) { return s.embedding.has_value(); })) {
      missing.push_back("embedding");
    } else if (!AllSamples(r, [](const auto& s) { return !s.embedding->empty(); })) {
      missing.push_back("embedding (d>=1)");
    }
  } else if (method == "g_nll" || method == "perplexity") {
    if (r.answer.token_logprobs.empty()) {
      missing.push_back("answer.token_logprobs");
    }
  } else if (method == "p_true") {
    if (!r.p_true_logprob) missing.push_back("p_true_logprob");
  } else if (method == "sequence_length_samples") {
    need_samples();
  }
  return missing;
}

std::string_view IndicatorName(Indicator indicator) {
  switch (indicator) {
    case Indicator::kSp:
      return "sp";
    case Indicator::kSpMoji:
      return "sp_moji";
    case Indicator::kOod:
      return "ood";
    case Indicator::kPerturb:
      return "perturb";
  }
  return "sp";
}

Indicator ParseIndicator(std::string_view name) {
  if (name == "sp") return Indicator::kSp;
  if (name == "sp_moji" || name == "sp-moji") return Indicator::kSpMoji;
  if (name == "ood") return Indicator::kOod;
  if (name == "perturb") return Indicator::kPerturb;
  Fail(ErrorKind::kValidation, "unknown indicator '" + std::string(name) + "'");
}

void ValidateResult(const ExperimentResult& result) {
  const bool signed_codomain = result.indicator == Indicator::kPerturb;
  const double lo = signed_codomain ? -1.0 : 0.0;
  if (!(result.value >= lo && result.value <= 1.0)) {
    Fail(ErrorKind::kValidation,
         "result for method '" + result.method + "' on " + result.dataset + "/" +
             result.model + ": value " + FormatDouble(result.value) +
             " outside codomain of indicator " +
             std::string(IndicatorName(result.indicator)));
  }
}

Table ResultsToTable(std::span<const ExperimentResult> results) {
  Table t;
  t.header = {"method", "dataset", "model", "indicator", "value", "partition_tags"};
  for (const auto& r : results) {
    std::vector<std::string> tags(r.partition_tags.begin(), r.partition_tags.end());
    t.rows.push_back({r.method, r.dataset, r.model,
                      std::string(IndicatorName(r.indicator)),
                      FormatDouble(r.value), JoinList(tags, "|")});
  }
  return t;
}

std::vector<ExperimentResult> ResultsFromTable(const Table& table) {
  const size_t method = table.RequireColumn("method", "results table");
  const size_t dataset = table.RequireColumn("dataset", "results table");
  const size_t model = table.RequireColumn("model", "results table");
  const size_t indicator = table.RequireColumn("indicator", "results table");
  const size_t value = table.RequireColumn("value", "results table");
  const size_t tags = table.RequireColumn("partition_tags", "results table");
  std::vector<ExperimentResult> out;
  for (const auto& row : table.rows) {
    ExperimentResult r;
    r.method = row[method];
    r.dataset = row[dataset];
    r.model = row[model];
    r.indicator = ParseIndicator(row[indicator]);
    r.value = ParseDouble(row[value], "results value");
    for (auto& tag : SplitList(row[tags], '|')) {
      if (!tag.empty()) r.partition_tags.insert(std::move(tag));
    }
    ValidateResult(r);
    out.push_back(std::move(r));
  }
  return out;
}

void WriteResults(const std::filesystem::path& path,
                  std::span<const ExperimentResult> results) {
  WriteTable(ResultsToTable(results), path);
}

std::vector<ExperimentResult> ReadResults(const std::filesystem::path& path) {
  return ResultsFromTable(ReadTable(path));
}

}  // namespace ueval
