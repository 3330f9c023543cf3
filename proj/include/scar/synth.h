// scar/synth.h

// Copyright 2026  The scar-efd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scar/fmeb.h"

namespace scar::data {

// Two pseudo-FM embedding sets with a known optimal error rate. Informative
// coordinates of each set are Normal(+-separation/2, noise^2) with the sign
// given by the label (fake: +); every other coordinate is Normal(0, noise^2).
// Noise is independent across the two sets, so fusing them strictly adds
// information.
struct SynthConfig {
  std::uint32_t dim_a = 64;
  std::uint32_t dim_b = 64;
  std::size_t n_train = 2000;
  std::size_t n_dev = 500;
  std::size_t n_test = 1000;
  double separation = 2.0;
  double noise = 1.0;
  std::vector<std::uint32_t> informative_a = {0, 1, 2, 3};
  std::vector<std::uint32_t> informative_b = {4, 5, 6, 7};
  std::uint64_t seed = 0;

  // Throws ConfigError: indices out of range, duplicated, or shared between
  // the two lists; non-positive noise; negative separation.
  void validate() const;
};

// Contiguous informative blocks: a gets [0, ka), b gets [ka, ka + kb).
std::vector<std::uint32_t> contiguous_dims(std::uint32_t begin,
                                           std::uint32_t count);

std::pair<EmbeddingSet, EmbeddingSet> synth_generate(const SynthConfig& cfg);

enum class OracleView { kA, kB, kFused };

// EER of the Bayes-optimal detector: the sum of the k informative
// coordinates is Normal(+-k s/2, k sigma^2), so EER = Phi(-sqrt(k) s / 2 sigma).
double bayes_oracle_eer(const SynthConfig& cfg, OracleView view);

double standard_normal_cdf(double x);

}  // namespace scar::data
