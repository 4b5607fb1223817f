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

#include "ueval/judge.h"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace ueval::judge {
namespace {

using nlohmann::json;

constexpr std::string_view kQaTemplate =
    "We are assessing the quality of answers \n"
    "to the following question: {question}\n"
    "The expected answer is: {correct_answer}.\n"
    "The proposed answer is: {predicted_answer}\n"
    "Within the context of the question,\n"
    "does the proposed answer mean the same as the expected answer?\n"
    "Respond only with yes or no.\n"
    "Response:";

constexpr std::string_view kGenTemplate =
    "We are assessing the quality of answers \n"
    "to the following question: {question}\n"
    "The following are example answers: {correct_answer}.\n"
    "The proposed answer is: {predicted_answer}\n"
    "Within the context of the question and example answer, \n"
    "is the proposed answer correct?\n"
    "Respond only with yes or no.\n"
    "Response:";

// Single-pass substitution so placeholder text inside the values is left alone.
std::string Substitute(std::string_view tmpl,
                       const std::vector<std::pair<std::string_view, std::string_view>>& vars) {
  std::string out;
  size_t i = 0;
  while (i < tmpl.size()) {
    bool replaced = false;
    if (tmpl[i] == '{') {
      for (const auto& [key, value] : vars) {
        if (tmpl.substr(i).starts_with(key)) {
          out.append(value);
          i += key.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(tmpl[i++]);
  }
  return out;
}

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl ParseUrl(const std::string& url) {
  const std::string scheme = "http://";
  if (!url.starts_with(scheme)) {
    Fail(ErrorKind::kConfiguration,
         "judge endpoint must be an http:// URL, got '" + url + "'");
  }
  const size_t slash = url.find('/', scheme.size());
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

JudgeConfig ConfigFromJson(const json& j) {
  JudgeConfig c;
  c.judge_id = j.at("judge_id").get<std::string>();
  c.model_name = j.at("model_name").get<std::string>();
  c.prompt_template = ParseTemplate(j.at("prompt_template").get<std::string>());
  c.temperature = j.at("temperature").get<double>();
  c.endpoint_url = j.value("endpoint_url", std::string());
  c.num_samples = j.value("num_samples", c.num_samples);
  c.max_retries = j.value("max_retries", c.max_retries);
  c.parallelism_limit = j.value("parallelism_limit", c.parallelism_limit);
  c.max_tokens = j.value("max_tokens", c.max_tokens);
  c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
  c.timeout_s = j.value("timeout_s", c.timeout_s);
  return c;
}

struct WorkItem {
  size_t slot;
  const GenerationRecord* record;
  const JudgeConfig* config;
  int sample_index;
  std::string prompt;
  std::string key;
};

JudgeVerdict Invoke(const WorkItem& item, JudgeTransport& transport,
                    std::atomic<int>& calls) {
  JudgeVerdict v;
  v.record_id = item.record->id;
  v.judge_id = item.config->judge_id;
  v.sample_index = item.sample_index;
  v.cache_key = item.key;
  int delay_ms = item.config->backoff_ms;
  for (int attempt = 0; attempt <= item.config->max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms *= 2;
    }
    ++calls;
    try {
      v.raw_text = transport.Complete(*item.config, item.prompt);
      v.verdict = ParseVerdict(v.raw_text);
      v.error.clear();
      v.timestamp = UtcNow();
      return v;
    } catch (const std::exception& e) {
      v.error = e.what();
    }
  }
  v.raw_text.clear();
  v.verdict = std::nullopt;
  v.timestamp = UtcNow();
  v.error = "retries exhausted: " + v.error;
  return v;
}

}  // namespace

std::string_view TemplateName(PromptTemplate t) {
  return t == PromptTemplate::kQa ? "qa" : "gen";
}

PromptTemplate ParseTemplate(std::string_view name) {
  if (name == "qa") return PromptTemplate::kQa;
  if (name == "gen") return PromptTemplate::kGen;
  Fail(ErrorKind::kConfiguration, "unknown prompt template '" + std::string(name) + "'");
}

void ValidateJudgeConfig(const JudgeConfig& c) {
  auto bad = [&](const std::string& what) {
    Fail(ErrorKind::kConfiguration, "judge '" + c.judge_id + "': " + what);
  };
  if (c.judge_id.empty()) bad("judge_id is empty");
  if (c.model_name.empty()) bad("model_name is empty");
  if (!(c.temperature >= 0.0)) bad("temperature must be >= 0");
  if (c.num_samples < 1) bad("num_samples must be >= 1");
  if (c.max_retries < 0) bad("max_retries must be >= 0");
  if (c.parallelism_limit < 1) bad("parallelism_limit must be >= 1");
  if (c.max_tokens < 1) bad("max_tokens must be >= 1");
  if (c.backoff_ms < 0) bad("backoff_ms must be >= 0");
}

std::vector<JudgeConfig> LoadJudgeConfigs(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  std::vector<JudgeConfig> configs;
  try {
    json j = json::parse(text);
    const json& list = j.is_object() ? j.at("judges") : j;
    for (const auto& item : list) configs.push_back(ConfigFromJson(item));
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, path.string() + ": " + e.what());
  }
  for (const auto& c : configs) ValidateJudgeConfig(c);
  return configs;
}

std::string RenderPrompt(PromptTemplate t, std::string_view question,
                         std::span<const std::string> references,
                         std::string_view predicted) {
  if (question.empty()) Fail(ErrorKind::kValidation, "judge prompt: question is empty");
  if (predicted.empty()) Fail(ErrorKind::kValidation, "judge prompt: predicted answer is empty");
  if (references.empty()) Fail(ErrorKind::kValidation, "judge prompt: no references");
  const std::string joined =
      JoinList(std::vector<std::string>(references.begin(), references.end()), "; ");
  return Substitute(t == PromptTemplate::kQa ? kQaTemplate : kGenTemplate,
                    {{"{question}", question},
                     {"{correct_answer}", joined},
                     {"{predicted_answer}", predicted}});
}

std::optional<int> ParseVerdict(std::string_view raw_text) {
  const auto words = correctness::Tokenize(raw_text);
  if (std::find(words.begin(), words.end(), "yes") != words.end()) return 1;
  if (std::find(words.begin(), words.end(), "no") != words.end()) return 0;
  return std::nullopt;
}

std::string CacheKey(std::string_view model_name, std::string_view prompt,
                     double temperature, int sample_index) {
  json payload = {{"model", model_name},
                  {"prompt", prompt},
                  {"temperature", FormatDouble(temperature)},
                  {"sample_index", sample_index}};
  const std::string bytes = payload.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    Fail(ErrorKind::kNumerical, "SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex.append(buf, 2);
  }
  return hex;
}

std::string ExtractCompletionText(std::string_view body) {
  try {
    json j = json::parse(body);
    if (j.contains("text")) return j.at("text").get<std::string>();
    const json& choice = j.at("choices").at(0);
    if (choice.contains("text")) return choice.at("text").get<std::string>();
    return choice.at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("malformed judge response: ") + e.what());
  }
}

std::string HttpJudgeTransport::Complete(const JudgeConfig& config,
                                         const std::string& prompt) {
  const ParsedUrl url = ParseUrl(config.endpoint_url);
  httplib::Client client(url.origin);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config.timeout_s));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  httplib::Headers headers;
  if (const char* token = std::getenv(kAuthTokenEnv); token != nullptr && *token != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }
  const json body = {{"model", config.model_name},
                     {"prompt", prompt},
                     {"temperature", config.temperature},
                     {"max_tokens", config.max_tokens}};
  auto res = client.Post(url.path, headers, body.dump(), "application/json");
  if (!res) {
    Fail(ErrorKind::kIo, "judge request to " + config.endpoint_url +
                             " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    Fail(ErrorKind::kIo, "judge endpoint returned HTTP " + std::to_string(res->status));
  }
  return ExtractCompletionText(res->body);
}

std::string VerdictToLine(const JudgeVerdict& v) {
  json j = {{"cache_key", v.cache_key},   {"record_id", v.record_id},
            {"judge_id", v.judge_id},     {"sample_index", v.sample_index},
            {"raw_text", v.raw_text},     {"timestamp", v.timestamp}};
  j["verdict"] = v.verdict ? json(*v.verdict) : json(nullptr);
  if (!v.error.empty()) j["error"] = v.error;
  return j.dump();
}

JudgeVerdict VerdictFromLine(std::string_view line) {
  try {
    json j = json::parse(line);
    JudgeVerdict v;
    v.cache_key = j.at("cache_key").get<std::string>();
    v.record_id = j.at("record_id").get<std::string>();
    v.judge_id = j.at("judge_id").get<std::string>();
    v.sample_index = j.at("sample_index").get<int>();
    v.raw_text = j.at("raw_text").get<std::string>();
    v.timestamp = j.value("timestamp", std::string());
    v.error = j.value("error", std::string());
    if (!j.at("verdict").is_null()) v.verdict = j.at("verdict").get<int>();
    return v;
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("malformed cache line: ") + e.what());
  }
}

VerdictCache::VerdictCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create cache dir " + dir_.string());
}

std::filesystem::path VerdictCache::FileFor(const std::string& judge_id) const {
  return dir_ / (judge_id + ".jsonl");
}

void VerdictCache::Load(const std::string& judge_id) {
  const auto path = FileFor(judge_id);
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot read cache " + path.string());
  std::string line;
  std::lock_guard<std::mutex> lock(mu_);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    JudgeVerdict v = VerdictFromLine(line);
    entries_.insert_or_assign(v.cache_key, std::move(v));
  }
}

std::optional<JudgeVerdict> VerdictCache::Lookup(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void VerdictCache::Append(const JudgeVerdict& verdict) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto path = FileFor(verdict.judge_id);
  std::ofstream out(path, std::ios::app);
  if (!out) Fail(ErrorKind::kIo, "cannot append to cache " + path.string());
  out << VerdictToLine(verdict) << '\n';
  entries_.insert_or_assign(verdict.cache_key, verdict);
}

JudgeRunResult QueryJudges(std::span<const GenerationRecord> records,
                           std::span<const JudgeConfig> configs,
                           const std::filesystem::path& cache_dir,
                           JudgeTransport& transport) {
  for (const auto& c : configs) ValidateJudgeConfig(c);
  VerdictCache cache(cache_dir);
  for (const auto& c : configs) cache.Load(c.judge_id);

  JudgeRunResult result;
  std::vector<std::vector<WorkItem>> pending(configs.size());
  for (const auto& record : records) {
    for (size_t ci = 0; ci < configs.size(); ++ci) {
      const JudgeConfig& config = configs[ci];
      const std::string prompt = RenderPrompt(config.prompt_template, record.question,
                                              record.references, record.answer.text);
      for (int k = 0; k < config.num_samples; ++k) {
        const size_t slot = result.verdicts.size();
        const std::string key = CacheKey(config.model_name, prompt, config.temperature, k);
        result.verdicts.emplace_back();
        if (auto hit = cache.Lookup(key)) {
          hit->record_id = record.id;
          hit->judge_id = config.judge_id;
          hit->sample_index = k;
          result.verdicts[slot] = std::move(*hit);
          ++result.stats.cache_hits;
          continue;
        }
        pending[ci].push_back({slot, &record, &config, k, prompt, key});
      }
    }
  }

  std::atomic<int> calls{0};
  std::atomic<int> failures{0};
  for (size_t ci = 0; ci < configs.size(); ++ci) {
    auto& items = pending[ci];
    if (items.empty()) continue;
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next++; i < items.size(); i = next++) {
        JudgeVerdict v = Invoke(items[i], transport, calls);
        if (v.error.empty()) {
          cache.Append(v);
        } else {
          ++failures;
        }
        result.verdicts[items[i].slot] = std::move(v);
      }
    };
    const size_t n_threads =
        std::min(items.size(), static_cast<size_t>(configs[ci].parallelism_limit));
    std::vector<std::thread> threads;
    for (size_t t = 1; t < n_threads; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
  }
  result.stats.network_calls = calls.load();
  result.stats.failures = failures.load();
  return result;
}

std::string VerdictColumnName(const std::string& judge_id, int sample_index) {
  return "judge." + judge_id + ".s" + std::to_string(sample_index);
}

correctness::CorrectnessTable VerdictsToTable(
    std::span<const GenerationRecord> records, std::span<const JudgeConfig> configs,
    std::span<const JudgeVerdict> verdicts) {
  correctness::CorrectnessTable table;
  std::map<std::string, size_t> row_of;
  for (const auto& r : records) {
    row_of.emplace(r.id, table.record_ids.size());
    table.record_ids.push_back(r.id);
  }
  std::map<std::string, size_t> col_of;
  for (const auto& c : configs) {
    for (int k = 0; k < c.num_samples; ++k) {
      const std::string name = VerdictColumnName(c.judge_id, k);
      col_of.emplace(name, table.column_names.size());
      table.AddColumn(name, std::vector<std::optional<double>>(records.size()));
    }
  }
  for (const auto& v : verdicts) {
    auto row = row_of.find(v.record_id);
    auto col = col_of.find(VerdictColumnName(v.judge_id, v.sample_index));
    if (row == row_of.end() || col == col_of.end() || !v.verdict) continue;
    table.columns[col->second][row->second] = static_cast<double>(*v.verdict);
  }
  return table;
}

}  // namespace ueval::judge
