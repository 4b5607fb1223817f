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

#include "ueval/verification.h"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <numeric>
#include <tuple>

#include "ueval/errors.h"
#include "ueval/riskmetrics.h"

namespace ueval::verify {
namespace {

struct NoiseTrial {
  double clean;
  double noisy;
};

struct BiasTrial {
  double reconstruction;
  double direct;
};

void CheckArgs(double auroc, double rate, int n, int trials) {
  if (!(auroc > 0.0 && auroc < 1.0)) {
    Fail(ErrorKind::kConfiguration, "target AUROC must lie in (0,1)");
  }
  if (!(rate >= 0.0 && rate < 0.5)) {
    Fail(ErrorKind::kConfiguration, "rate must lie in [0, 0.5)");
  }
  if (n < 4) Fail(ErrorKind::kConfiguration, "n must be >= 4");
  if (trials < 2) Fail(ErrorKind::kConfiguration, "trials must be >= 2");
}

std::mt19937_64 TrialEngine(uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(trial)};
  return std::mt19937_64(seq);
}

NoiseTrial RunNoiseTrial(double auroc, double p, int n, uint64_t seed, int trial) {
  std::mt19937_64 rng = TrialEngine(seed, trial);
  const SyntheticSample sample = GaussianShiftSample(auroc, n, rng);
  const std::vector<int> noisy = risk::ApplyBernoulliNoise(sample.labels, p, rng());
  return {risk::Auroc(sample.scores, sample.labels), risk::Auroc(sample.scores, noisy)};
}

BiasTrial RunBiasTrial(double auroc, double rate, int n, uint64_t seed, int trial) {
  std::mt19937_64 rng = TrialEngine(seed, trial);
  const SyntheticSample sample = GaussianShiftSample(auroc, n, rng);
  std::bernoulli_distribution distort(rate);
  std::vector<int> mask(sample.labels.size());
  for (int& m : mask) m = distort(rng) ? 1 : 0;
  const risk::BiasDecomposition d =
      risk::DecomposeBiasedAuroc(sample.scores, sample.labels, mask);
  return {d.reconstruction, d.direct};
}

std::pair<double, double> MeanSd(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

NoiseReport SummarizeNoise(double auroc, double p, const std::vector<NoiseTrial>& trials) {
  std::vector<double> noisy, clean, predicted;
  for (const auto& t : trials) {
    noisy.push_back(t.noisy);
    clean.push_back(t.clean);
    predicted.push_back(risk::PredictedNoisyAuroc(t.clean, p));
  }
  NoiseReport r;
  r.predicted = risk::PredictedNoisyAuroc(auroc, p);
  r.predicted_from_clean = MeanSd(predicted).first;
  std::tie(r.empirical_mean, r.empirical_sd) = MeanSd(noisy);
  r.clean_mean = MeanSd(clean).first;
  return r;
}

BiasReport SummarizeBias(const std::vector<BiasTrial>& trials) {
  std::vector<double> residual, direct, recon;
  for (const auto& t : trials) {
    residual.push_back(t.reconstruction - t.direct);
    direct.push_back(t.direct);
    recon.push_back(t.reconstruction);
  }
  BiasReport r;
  std::tie(r.mean_residual, r.sd_residual) = MeanSd(residual);
  r.mean_direct = MeanSd(direct).first;
  r.mean_reconstruction = MeanSd(recon).first;
  return r;
}

}  // namespace

SyntheticSample GaussianShiftSample(double target_auroc, int n, std::mt19937_64& rng) {
  if (!(target_auroc > 0.0 && target_auroc < 1.0)) {
    Fail(ErrorKind::kConfiguration, "target AUROC must lie in (0,1)");
  }
  if (n < 2) Fail(ErrorKind::kConfiguration, "synthetic sample needs n >= 2");
  const boost::math::normal_distribution<double> standard;
  const double mu = std::sqrt(2.0) * boost::math::quantile(standard, target_auroc);
  std::normal_distribution<double> noise(0.0, 1.0);
  SyntheticSample s;
  s.scores.resize(static_cast<size_t>(n));
  s.labels.resize(static_cast<size_t>(n));
  const int negatives = n / 2;
  for (int i = 0; i < n; ++i) {
    const int y = i < negatives ? 0 : 1;
    s.labels[static_cast<size_t>(i)] = y;
    s.scores[static_cast<size_t>(i)] = noise(rng) + (y == 1 ? mu : 0.0);
  }
  return s;
}

NoiseReport VerifyNoiseIdentity(double auroc, double p, int n, int trials, uint64_t seed) {
  CheckArgs(auroc, p, n, trials);
  std::vector<NoiseTrial> results(static_cast<size_t>(trials));
#pragma omp parallel for schedule(static)
  for (int t = 0; t < trials; ++t) {
    results[static_cast<size_t>(t)] = RunNoiseTrial(auroc, p, n, seed, t);
  }
  return SummarizeNoise(auroc, p, results);
}

BiasReport VerifyBiasDecomposition(double auroc, double rate, int n, int trials,
                                   uint64_t seed) {
  CheckArgs(auroc, rate, n, trials);
  std::vector<BiasTrial> results(static_cast<size_t>(trials));
#pragma omp parallel for schedule(static)
  for (int t = 0; t < trials; ++t) {
    results[static_cast<size_t>(t)] = RunBiasTrial(auroc, rate, n, seed, t);
  }
  return SummarizeBias(results);
}

namespace serial {

NoiseReport VerifyNoiseIdentity(double auroc, double p, int n, int trials, uint64_t seed) {
  CheckArgs(auroc, p, n, trials);
  std::vector<NoiseTrial> results;
  for (int t = 0; t < trials; ++t) results.push_back(RunNoiseTrial(auroc, p, n, seed, t));
  return SummarizeNoise(auroc, p, results);
}

BiasReport VerifyBiasDecomposition(double auroc, double rate, int n, int trials,
                                   uint64_t seed) {
  CheckArgs(auroc, rate, n, trials);
  std::vector<BiasTrial> results;
  for (int t = 0; t < trials; ++t) results.push_back(RunBiasTrial(auroc, rate, n, seed, t));
  return SummarizeBias(results);
}

}  // namespace serial
}  // namespace ueval::verify
