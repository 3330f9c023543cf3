// scar/metrics.h

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
#include <string>
#include <vector>

namespace scar::train {

// One operating point. A score >= threshold is a "fake" decision.
struct RocPoint {
  double threshold;
  std::size_t false_accepts;  // real utterances scored >= threshold
  std::size_t false_rejects;  // fake utterances scored < threshold
  double far;
  double frr;
};

// Points in increasing threshold order, from the -inf sentinel (FAR 1, FRR 0)
// through the midpoints between consecutive distinct scores to the +inf
// sentinel (FAR 0, FRR 1).
struct RocCurve {
  std::vector<RocPoint> points;
  std::size_t n_real = 0;
  std::size_t n_fake = 0;
  double min_score = 0.0;
  double max_score = 0.0;
};

// Labels: 0 real, 1 fake. Throws MetricError unless both classes occur.
RocCurve roc_points(std::span<const double> scores,
                    std::span<const std::uint8_t> labels);
RocCurve roc_points(std::span<const float> scores,
                    std::span<const std::uint8_t> labels);

struct EerResult {
  double eer;
  double threshold;
};

// Finds where FAR - FRR changes sign. An exact FAR == FRR point wins (the
// lowest such threshold); otherwise FAR and FRR are interpolated linearly
// between the bracketing points and the EER is their common value. For
// interpolation the sentinels stand at the lowest and highest score.
EerResult compute_eer(const RocCurve& curve);

struct EvalReport {
  std::string split;
  double eer = 0.0;
  double threshold = 0.0;
  std::size_t n_real = 0;
  std::size_t n_fake = 0;
};

EvalReport make_report(std::string split, std::span<const float> scores,
                       std::span<const std::uint8_t> labels);

// "EER 12.34% at threshold 0.512345 (real 250, fake 250)" followed by a
// machine-readable line with full precision.
std::string format_report(const EvalReport& report);

}  // namespace scar::train
