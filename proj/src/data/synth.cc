// data/synth.cc

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

#include "scar/synth.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "scar/rng.h"

namespace scar::data {

namespace {

void check_dims(const std::vector<std::uint32_t>& dims, std::uint32_t limit,
                const char* which) {
  std::set<std::uint32_t> seen;
  for (auto d : dims) {
    if (d >= limit) {
      throw ConfigError(std::string("informative dim ") + std::to_string(d) +
                        " out of range for " + which + " (dim " +
                        std::to_string(limit) + ")");
    }
    if (!seen.insert(d).second) {
      throw ConfigError(std::string("informative dim ") + std::to_string(d) +
                        " repeated for " + which);
    }
  }
}

}  // namespace

void SynthConfig::validate() const {
  if (dim_a == 0 || dim_b == 0) throw ConfigError("synth dims must be positive");
  if (!(noise > 0.0) || !std::isfinite(noise)) {
    throw ConfigError("synth noise sigma must be > 0");
  }
  if (!(separation >= 0.0) || !std::isfinite(separation)) {
    throw ConfigError("synth separation must be >= 0");
  }
  check_dims(informative_a, dim_a, "a");
  check_dims(informative_b, dim_b, "b");
  const std::set<std::uint32_t> sa(informative_a.begin(), informative_a.end());
  for (auto d : informative_b) {
    if (sa.count(d)) {
      throw ConfigError("informative dim " + std::to_string(d) +
                        " appears in both a and b");
    }
  }
}

std::vector<std::uint32_t> contiguous_dims(std::uint32_t begin,
                                           std::uint32_t count) {
  std::vector<std::uint32_t> dims(count);
  for (std::uint32_t i = 0; i < count; ++i) dims[i] = begin + i;
  return dims;
}

std::pair<EmbeddingSet, EmbeddingSet> synth_generate(const SynthConfig& cfg) {
  cfg.validate();
  EmbeddingSet a("synth-a", cfg.dim_a);
  EmbeddingSet b("synth-b", cfg.dim_b);
  const double half = cfg.separation / 2.0;

  Rng rng(cfg.seed);
  const std::pair<Split, std::size_t> splits[] = {
      {Split::kTrain, cfg.n_train},
      {Split::kDev, cfg.n_dev},
      {Split::kTest, cfg.n_test}};
  for (const auto& [split, count] : splits) {
    for (std::size_t i = 0; i < count; ++i) {
      char id[48];
      std::snprintf(id, sizeof(id), "%s-%07zu", to_string(split), i);
      const Label label = rng.bernoulli(0.5) ? Label::kFake : Label::kReal;
      const double sign = label == Label::kFake ? 1.0 : -1.0;

      auto draw = [&](std::uint32_t dim,
                      const std::vector<std::uint32_t>& informative) {
        std::vector<double> mu(dim, 0.0);
        for (auto d : informative) mu[d] = sign * half;
        std::vector<float> v(dim);
        for (std::uint32_t d = 0; d < dim; ++d) {
          v[d] = static_cast<float>(rng.normal(mu[d], cfg.noise));
        }
        return v;
      };
      EmbeddingRecord ra{id, label, split, draw(cfg.dim_a, cfg.informative_a)};
      EmbeddingRecord rb{id, label, split, draw(cfg.dim_b, cfg.informative_b)};
      a.add(std::move(ra));
      b.add(std::move(rb));
    }
  }
  return {std::move(a), std::move(b)};
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double bayes_oracle_eer(const SynthConfig& cfg, OracleView view) {
  cfg.validate();
  std::size_t k = 0;
  if (view != OracleView::kB) k += cfg.informative_a.size();
  if (view != OracleView::kA) k += cfg.informative_b.size();
  if (k == 0 || cfg.separation == 0.0) return 0.5;
  return standard_normal_cdf(-std::sqrt(static_cast<double>(k)) *
                             cfg.separation / (2.0 * cfg.noise));
}

}  // namespace scar::data
