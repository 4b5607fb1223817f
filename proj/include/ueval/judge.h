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

#ifndef UEVAL_JUDGE_H_
#define UEVAL_JUDGE_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueval/correctness.h"
#include "ueval/errors.h"
#include "ueval/records.h"

namespace ueval::judge {

enum class PromptTemplate { kQa, kGen };

std::string_view TemplateName(PromptTemplate t);
PromptTemplate ParseTemplate(std::string_view name);

// Environment variable holding the bearer token sent to judge endpoints.
inline constexpr char kAuthTokenEnv[] = "UEVAL_JUDGE_TOKEN";

struct JudgeConfig {
  std::string judge_id;
  std::string model_name;
  PromptTemplate prompt_template = PromptTemplate::kQa;
  double temperature = 0.5;
  std::string endpoint_url;  // http://host[:port]/path
  int num_samples = 1;
  int max_retries = 3;
  int parallelism_limit = 4;
  int max_tokens = 8;
  int backoff_ms = 200;  // first retry delay; doubles on each further retry
  double timeout_s = 30.0;
};

void ValidateJudgeConfig(const JudgeConfig& config);

// Reads a list of judge configurations from a structured-text file (either a
// bare array or an object with a "judges" array).
std::vector<JudgeConfig> LoadJudgeConfigs(const std::filesystem::path& path);

struct JudgeVerdict {
  std::string record_id;
  std::string judge_id;
  int sample_index = 0;
  std::string raw_text;
  std::optional<int> verdict;
  std::string timestamp;  // UTC, ISO 8601
  std::string cache_key;
  std::string error;  // non-empty when the invocation failed

  bool operator==(const JudgeVerdict&) const = default;
};

// Instantiates the prompt template. Multiple references are joined by "; ".
std::string RenderPrompt(PromptTemplate t, std::string_view question,
                         std::span<const std::string> references,
                         std::string_view predicted);

// 1 if the lowercased words contain "yes", else 0 if they contain "no",
// else nullopt.
std::optional<int> ParseVerdict(std::string_view raw_text);

// Hex SHA-256 over (model name, prompt, temperature, sample index).
std::string CacheKey(std::string_view model_name, std::string_view prompt,
                     double temperature, int sample_index);

// Extracts the generated text from an endpoint response body. Accepts
// {"text": ...}, {"choices": [{"text": ...}]} and
// {"choices": [{"message": {"content": ...}}]}.
std::string ExtractCompletionText(std::string_view body);

// Sends one prompt and returns the completion text. Implementations throw
// ueval::Error on failure.
class JudgeTransport {
 public:
  virtual ~JudgeTransport() = default;
  virtual std::string Complete(const JudgeConfig& config,
                               const std::string& prompt) = 0;
};

// Posts {model, prompt, temperature, max_tokens} to config.endpoint_url.
class HttpJudgeTransport : public JudgeTransport {
 public:
  std::string Complete(const JudgeConfig& config,
                       const std::string& prompt) override;
};

// Append-only verdict store, one line-delimited file per judge config.
class VerdictCache {
 public:
  explicit VerdictCache(std::filesystem::path dir);

  // Loads <dir>/<judge_id>.jsonl if present.
  void Load(const std::string& judge_id);
  std::optional<JudgeVerdict> Lookup(const std::string& key) const;
  // Thread-safe; writes through to disk.
  void Append(const JudgeVerdict& verdict);

  std::filesystem::path FileFor(const std::string& judge_id) const;

 private:
  std::filesystem::path dir_;
  std::map<std::string, JudgeVerdict> entries_;
  mutable std::mutex mu_;
};

std::string VerdictToLine(const JudgeVerdict& verdict);
JudgeVerdict VerdictFromLine(std::string_view line);

struct JudgeRunStats {
  int cache_hits = 0;
  int network_calls = 0;  // attempts, including retries
  int failures = 0;
};

struct JudgeRunResult {
  // Ordered by (record, config, sample index) regardless of completion order.
  std::vector<JudgeVerdict> verdicts;
  JudgeRunStats stats;
};

JudgeRunResult QueryJudges(std::span<const GenerationRecord> records,
                           std::span<const JudgeConfig> configs,
                           const std::filesystem::path& cache_dir,
                           JudgeTransport& transport);

// Column name for one judge config sample: judge.<judge_id>.s<k>.
std::string VerdictColumnName(const std::string& judge_id, int sample_index);

// One column per (config, sample index), rows in record order.
correctness::CorrectnessTable VerdictsToTable(
    std::span<const GenerationRecord> records,
    std::span<const JudgeConfig> configs,
    std::span<const JudgeVerdict> verdicts);

}  // namespace ueval::judge

#endif  // UEVAL_JUDGE_H_
