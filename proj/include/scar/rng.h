// scar/rng.h

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
#include <span>

namespace scar {

// xoshiro256** (Blackman & Vigna) seeded through splitmix64. The output
// sequence depends only on (seed, position), so runs are reproducible across
// compilers and platforms. Distribution helpers are implemented here rather
// than through <random>, whose distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  static constexpr const char* kAlgorithm = "xoshiro256**";

  std::uint64_t seed() const { return seed_; }
  // Number of 64-bit words drawn since construction.
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer on [0, bound), bound > 0, without modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);
  bool bernoulli(double p);
  // Standard normal via Box-Muller; consumes exactly two words per call.
  double normal();
  double normal(double mean, double stddev);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Independent generator derived from this one's next output.
  Rng fork();

 private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::uint64_t s_[4];
};

}  // namespace scar
