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

#ifndef UEVAL_VERIFICATION_H_
#define UEVAL_VERIFICATION_H_

#include <cstdint>
#include <random>
#include <vector>

// Monte-Carlo checks of the AUROC label-noise and label-bias identities on
// synthetic Gaussian-shift data. Trial t draws from an engine seeded with
// seed_seq{seed, t}, so results do not depend on the thread count.
namespace ueval::verify {

struct SyntheticSample {
  std::vector<double> scores;
  std::vector<int> labels;
};

// n/2 negatives ~ N(0,1) and n - n/2 positives ~ N(mu,1) with
// mu = sqrt(2) * Phi^-1(target_auroc), so the population AUROC is
// target_auroc.
SyntheticSample GaussianShiftSample(double target_auroc, int n,
                                    std::mt19937_64& rng);

struct NoiseReport {
  double predicted = 0.0;           // from the nominal AUROC
  double predicted_from_clean = 0.0;  // mean over trials of the prediction
                                      // from each trial's clean AUROC
  double empirical_mean = 0.0;
  double empirical_sd = 0.0;
  double clean_mean = 0.0;
};

NoiseReport VerifyNoiseIdentity(double auroc, double p, int n, int trials,
                                uint64_t seed);

struct BiasReport {
  double mean_residual = 0.0;  // mean(reconstruction - direct)
  double sd_residual = 0.0;
  double mean_direct = 0.0;
  double mean_reconstruction = 0.0;
};

// Distortion mask drawn iid Bernoulli(rate) per sample.
BiasReport VerifyBiasDecomposition(double auroc, double rate, int n, int trials,
                                   uint64_t seed);

namespace serial {
NoiseReport VerifyNoiseIdentity(double auroc, double p, int n, int trials,
                                uint64_t seed);
BiasReport VerifyBiasDecomposition(double auroc, double rate, int n, int trials,
                                   uint64_t seed);
}  // namespace serial

}  // namespace ueval::verify

#endif  // UEVAL_VERIFICATION_H_
