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

#include "ueval/riskmetrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace ueval::risk {
namespace {

void CheckSameLength(size_t a, size_t b, const char* what) {
  if (a != b) {
    Fail(ErrorKind::kShape, std::string(what) + ": length mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void CheckFinite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) Fail(ErrorKind::kValidation, std::string(what) + ": non-finite score");
  }
}

// AUROC restricted to the indices in `subset`; returns nullopt when a class
// is missing.
std::optional<double> SubsetAuroc(std::span<const double> scores,
                                  std::span<const int> labels,
                                  const std::vector<size_t>& subset) {
  std::vector<double> s;
  std::vector<int> y;
  for (size_t i : subset) {
    s.push_back(scores[i]);
    y.push_back(labels[i]);
  }
  const auto pos = std::count(y.begin(), y.end(), 1);
  if (pos == 0 || pos == static_cast<long>(y.size())) return std::nullopt;
  return Auroc(s, y);
}

double PairConcordance(const PerturbSeries& series) {
  double concordant = 0.0;
  int pairs = 0;
  for (size_t i = 0; i < series.size(); ++i) {
    for (size_t j = 0; j < series.size(); ++j) {
      if (!(series[i].first > series[j].first)) continue;
      ++pairs;
      if (series[i].second > series[j].second) {
        concordant += 1.0;
      } else if (series[i].second == series[j].second) {
        concordant += 0.5;
      }
    }
  }
  return concordant / pairs;
}

}  // namespace

std::vector<double> FractionalRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the mean 1-based rank.
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double Auroc(std::span<const double> scores, std::span<const int> labels) {
  CheckSameLength(scores.size(), labels.size(), "auroc");
  CheckFinite(scores, "auroc");
  double n1 = 0.0, n0 = 0.0;
  for (int y : labels) {
    if (y == 1) {
      n1 += 1.0;
    } else if (y == 0) {
      n0 += 1.0;
    } else {
      Fail(ErrorKind::kValidation, "auroc: labels must be 0 or 1");
    }
  }
  if (n1 == 0.0 || n0 == 0.0) {
    Fail(ErrorKind::kUndefinedMetric, "auroc: labels contain a single class");
  }
  const std::vector<double> ranks = FractionalRanks(scores);
  double rank_sum = 0.0;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) rank_sum += ranks[i];
  }
  const double u = rank_sum - n1 * (n1 + 1.0) / 2.0;
  return u / (n1 * n0);
}

double Spearman(std::span<const double> a, std::span<const double> b) {
  CheckSameLength(a.size(), b.size(), "spearman");
  if (a.size() < 2) Fail(ErrorKind::kUndefinedMetric, "spearman: need at least 2 values");
  CheckFinite(a, "spearman");
  CheckFinite(b, "spearman");
  const auto ra = FractionalRanks(a);
  const auto rb = FractionalRanks(b);
  const double n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mean_b = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean_a, db = rb[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    Fail(ErrorKind::kUndefinedMetric, "spearman: constant input");
  }
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

std::vector<std::optional<int>> BinarizeColumn(
    std::span<const std::optional<double>> column, double d) {
  if (!(d >= 0.0 && d <= 1.0)) Fail(ErrorKind::kConfiguration, "threshold must lie in [0,1]");
  std::vector<std::optional<int>> out;
  out.reserve(column.size());
  for (const auto& v : column) {
    out.push_back(v ? std::optional<int>(*v >= d ? 1 : 0) : std::nullopt);
  }
  return out;
}

double XiSp(std::span<const double> uncertainties,
            std::span<const std::optional<int>> correctness, Diagnostics* diag) {
  CheckSameLength(uncertainties.size(), correctness.size(), "xi_sp");
  std::vector<double> s;
  std::vector<int> incorrect;
  for (size_t i = 0; i < correctness.size(); ++i) {
    if (!correctness[i]) continue;
    s.push_back(uncertainties[i]);
    incorrect.push_back(*correctness[i] != 0 ? 0 : 1);
  }
  const size_t excluded = correctness.size() - s.size();
  if (excluded > 0 && diag != nullptr) {
    diag->Warn("xi_sp: excluded " + std::to_string(excluded) +
               " record(s) with null correctness");
  }
  if (!s.empty() && std::all_of(s.begin(), s.end(), [&](double v) { return v == s[0]; })) {
    Fail(ErrorKind::kUndefinedMetric, "xi_sp: uncertainty is constant");
  }
  return Auroc(s, incorrect);
}

double XiSpMoji(std::span<const double> uncertainties,
                std::span<const std::vector<std::optional<int>>> columns,
                Diagnostics* diag) {
  if (columns.empty()) Fail(ErrorKind::kConfiguration, "xi_sp_moji: no judge columns");
  double sum = 0.0;
  int used = 0;
  for (size_t k = 0; k < columns.size(); ++k) {
    try {
      sum += XiSp(uncertainties, columns[k], diag);
      ++used;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndefinedMetric) throw;
      if (diag != nullptr) {
        diag->Warn("xi_sp_moji: skipped judge column " + std::to_string(k) + ": " + e.what());
      }
    }
  }
  if (used == 0) {
    Fail(ErrorKind::kUndefinedMetric, "xi_sp_moji: every judge column is undefined");
  }
  return sum / used;
}

std::vector<int> ApplyBernoulliNoise(std::span<const int> labels, double p,
                                     uint64_t seed) {
  if (!(p >= 0.0 && p < 0.5)) Fail(ErrorKind::kConfiguration, "noise rate p must lie in [0, 0.5)");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(p);
  std::vector<int> out(labels.begin(), labels.end());
  for (int& y : out) {
    if (flip(rng)) y = 1 - y;
  }
  return out;
}

double PredictedNoisyAuroc(double auroc_orig, double p) {
  return auroc_orig * (1.0 - 2.0 * p) + p;
}

BiasDecomposition DecomposeBiasedAuroc(std::span<const double> scores,
                                       std::span<const int> labels,
                                       std::span<const int> mask) {
  CheckSameLength(scores.size(), labels.size(), "decompose_biased_auroc");
  CheckSameLength(scores.size(), mask.size(), "decompose_biased_auroc");
  std::vector<int> flipped(labels.size());
  std::vector<size_t> undist, dist;
  // counts[y][d]
  double counts[2][2] = {{0, 0}, {0, 0}};
  for (size_t i = 0; i < labels.size(); ++i) {
    if ((labels[i] != 0 && labels[i] != 1) || (mask[i] != 0 && mask[i] != 1)) {
      Fail(ErrorKind::kValidation, "decompose_biased_auroc: labels and mask must be 0/1");
    }
    flipped[i] = labels[i] ^ mask[i];
    counts[labels[i]][mask[i]] += 1.0;
    (mask[i] == 1 ? dist : undist).push_back(i);
  }
  BiasDecomposition out;
  out.direct = Auroc(scores, flipped);

  const double n_pos = counts[1][0] + counts[0][1];
  const double n_neg = counts[0][0] + counts[1][1];
  const double pairs = n_pos * n_neg;
  if (auto a = SubsetAuroc(scores, labels, undist)) {
    out.auroc_undist = *a;
    out.w_undist = counts[1][0] * counts[0][0] / pairs;
  }
  if (auto a = SubsetAuroc(scores, labels, dist)) {
    out.auroc_dist = *a;
    out.w_dist = counts[0][1] * counts[1][1] / pairs;
  }
  out.w_pos_flipped = counts[0][1] / n_pos;
  out.w_neg_flipped = counts[1][1] / n_neg;
  out.reconstruction = out.auroc_undist * out.w_undist - out.auroc_dist * out.w_dist +
                       0.5 * (out.w_pos_flipped + out.w_neg_flipped);
  return out;
}

double BootstrapSd(std::span<const double> judge_xis, int n, int trials,
                   uint64_t seed) {
  if (judge_xis.empty()) Fail(ErrorKind::kValidation, "bootstrap_sd: no values");
  if (n < 1) Fail(ErrorKind::kConfiguration, "bootstrap_sd: n must be >= 1");
  if (trials < 2) Fail(ErrorKind::kConfiguration, "bootstrap_sd: trials must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, judge_xis.size() - 1);
  std::vector<double> means(static_cast<size_t>(trials));
  for (double& m : means) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += judge_xis[pick(rng)];
    m = sum / n;
  }
  const double shift = means[0];
  double sum = 0.0, ss = 0.0;
  for (double m : means) {
    sum += m - shift;
    ss += (m - shift) * (m - shift);
  }
  return std::sqrt(std::max(0.0, (ss - sum * sum / trials) / (trials - 1)));
}

double OodAuroc(std::span<const double> uncertainties,
                std::span<const int> ood_labels) {
  return Auroc(uncertainties, ood_labels);
}

double XiPerturb(std::span<const PerturbSeries> series, CorKind kind,
                 Diagnostics* diag) {
  if (series.empty()) Fail(ErrorKind::kValidation, "xi_perturb: no records");
  double sum = 0.0;
  for (size_t r = 0; r < series.size(); ++r) {
    const PerturbSeries& s = series[r];
    std::vector<double> strengths, u;
    for (const auto& [st, un] : s) {
      strengths.push_back(st);
      u.push_back(un);
    }
    std::vector<double> distinct = strengths;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) {
      Fail(ErrorKind::kValidation, "xi_perturb: record " + std::to_string(r) +
                                       " has fewer than 2 distinct strengths");
    }
    const bool constant = std::all_of(u.begin(), u.end(), [&](double v) { return v == u[0]; });
    if (constant && diag != nullptr) {
      diag->Warn("xi_perturb: record " + std::to_string(r) +
                 " has constant uncertainty across strengths");
    }
    if (kind == CorKind::kSpearman) {
      sum += constant ? 0.0 : Spearman(u, strengths);
    } else {
      sum += PairConcordance(s);
    }
  }
  return sum / static_cast<double>(series.size());
}

}  // namespace ueval::risk
