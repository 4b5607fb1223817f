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

#ifndef UEVAL_TESTS_ORACLES_H_
#define UEVAL_TESTS_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

// Independent reference computations used to check the library.
namespace ueval::oracle {

// Sample AUROC by enumerating every (positive, negative) pair.
inline double PairAuroc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0, n1 = 0.0, n0 = 0.0;
  for (int y : labels) (y == 1 ? n1 : n0) += 1.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / (n1 * n0);
}

// Fractional ranks by counting, O(n^2).
inline std::vector<double> CountRanks(const std::vector<double>& v) {
  std::vector<double> ranks(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    double less = 0.0, equal = 0.0;
    for (double x : v) {
      if (x < v[i]) less += 1.0;
      if (x == v[i]) equal += 1.0;
    }
    ranks[i] = less + (equal + 1.0) / 2.0;
  }
  return ranks;
}

inline double Pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline double SpearmanByCounting(const std::vector<double>& a, const std::vector<double>& b) {
  return Pearson(CountRanks(a), CountRanks(b));
}

// log det of a symmetric positive definite matrix by Gaussian elimination.
inline double LogDet(std::vector<std::vector<double>> m) {
  const size_t n = m.size();
  double log_det = 0.0;
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    for (size_t r = k + 1; r < n; ++r) {
      if (std::abs(m[r][k]) > std::abs(m[pivot][k])) pivot = r;
    }
    std::swap(m[k], m[pivot]);
    log_det += std::log(std::abs(m[k][k]));
    for (size_t r = k + 1; r < n; ++r) {
      const double f = m[r][k] / m[k][k];
      for (size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
    }
  }
  return log_det;
}

// (1/N) log det(C + alpha I) with C the N x N Gram matrix of the embeddings
// after centring every dimension across the N samples.
inline double EigenScoreSampleCentred(const std::vector<std::vector<double>>& emb,
                                      double alpha) {
  const size_t n = emb.size(), d = emb[0].size();
  std::vector<double> mean(d, 0.0);
  for (const auto& e : emb) {
    for (size_t k = 0; k < d; ++k) mean[k] += e[k] / static_cast<double>(n);
  }
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      for (size_t k = 0; k < d; ++k) c[i][j] += (emb[i][k] - mean[k]) * (emb[j][k] - mean[k]);
    }
    c[i][i] += alpha;
  }
  return LogDet(c) / static_cast<double>(n);
}

// Same with Z^T (I - 1/d) Z: each embedding centred across its own entries.
inline double EigenScoreFeatureCentred(const std::vector<std::vector<double>>& emb,
                                       double alpha) {
  const size_t n = emb.size(), d = emb[0].size();
  std::vector<std::vector<double>> centred = emb;
  for (auto& e : centred) {
    double m = 0.0;
    for (double x : e) m += x / static_cast<double>(d);
    for (double& x : e) x -= m;
  }
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      for (size_t k = 0; k < d; ++k) c[i][j] += centred[i][k] * centred[j][k];
    }
    c[i][i] += alpha;
  }
  return LogDet(c) / static_cast<double>(n);
}

}  // namespace ueval::oracle

#endif  // UEVAL_TESTS_ORACLES_H_
