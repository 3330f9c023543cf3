// train/metrics.cc

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

#include "scar/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "scar/error.h"

namespace scar::train {

RocCurve roc_points(std::span<const double> scores,
                    std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw ShapeError("roc: " + std::to_string(scores.size()) + " scores for " +
                     std::to_string(labels.size()) + " labels");
  }
  RocCurve curve;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw MetricError("roc: non-finite score");
    if (labels[i] > 1) throw MetricError("roc: label must be 0 or 1");
    (labels[i] ? curve.n_fake : curve.n_real) += 1;
  }
  if (curve.n_real == 0 || curve.n_fake == 0) {
    throw MetricError("EER undefined: need both real and fake scores (got " +
                      std::to_string(curve.n_real) + " real, " +
                      std::to_string(curve.n_fake) + " fake)");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  curve.min_score = scores[order.front()];
  curve.max_score = scores[order.back()];

  const double inf = std::numeric_limits<double>::infinity();
  auto push = [&](double threshold, std::size_t fa, std::size_t fr) {
    curve.points.push_back(
        {threshold, fa, fr, static_cast<double>(fa) / curve.n_real,
         static_cast<double>(fr) / curve.n_fake});
  };

  // Sweep upward: passing a score moves it below every later threshold.
  std::size_t fa = curve.n_real, fr = 0;
  push(-inf, fa, fr);
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      if (labels[order[i]]) {
        ++fr;
      } else {
        --fa;
      }
      ++i;
    }
    if (i < order.size()) push(s + (scores[order[i]] - s) / 2.0, fa, fr);
  }
  push(inf, 0, curve.n_fake);
  return curve;
}

RocCurve roc_points(std::span<const float> scores,
                    std::span<const std::uint8_t> labels) {
  std::vector<double> wide(scores.begin(), scores.end());
  return roc_points(std::span<const double>(wide), labels);
}

EerResult compute_eer(const RocCurve& curve) {
  if (curve.points.size() < 2 || curve.n_real == 0 || curve.n_fake == 0) {
    throw MetricError("compute_eer: invalid ROC curve");
  }
  // sign(FAR - FRR) from integer counts, so exact ties are detected exactly.
  auto diff_sign = [&](const RocPoint& p) {
    const auto lhs = static_cast<unsigned __int128>(p.false_accepts) * curve.n_fake;
    const auto rhs = static_cast<unsigned __int128>(p.false_rejects) * curve.n_real;
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  };
  auto finite_threshold = [&](double t) {
    if (t == -std::numeric_limits<double>::infinity()) return curve.min_score;
    if (t == std::numeric_limits<double>::infinity()) return curve.max_score;
    return t;
  };

  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const RocPoint& p = curve.points[i];
    const int sign = diff_sign(p);
    if (sign == 0) return {p.far, finite_threshold(p.threshold)};
    if (sign < 0) {
      // i > 0 because the -inf sentinel has FAR 1 > FRR 0.
      const RocPoint& q = curve.points[i - 1];
      const double d0 = q.far - q.frr;
      const double d1 = p.far - p.frr;
      const double alpha = d0 / (d0 - d1);
      const double eer = q.far + alpha * (p.far - q.far);
      const double t0 = finite_threshold(q.threshold);
      const double t1 = finite_threshold(p.threshold);
      return {eer, t0 + alpha * (t1 - t0)};
    }
  }
  throw MetricError("compute_eer: FAR never falls below FRR");
}

EvalReport make_report(std::string split, std::span<const float> scores,
                       std::span<const std::uint8_t> labels) {
  const RocCurve curve = roc_points(scores, labels);
  const EerResult eer = compute_eer(curve);
  return {std::move(split), eer.eer, eer.threshold, curve.n_real,
          curve.n_fake};
}

std::string format_report(const EvalReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s EER %.2f%% at threshold %.6f (real %zu, fake %zu)\n"
                "# %s eer=%.17g threshold=%.17g n_real=%zu n_fake=%zu\n",
                r.split.c_str(), 100.0 * r.eer, r.threshold, r.n_real,
                r.n_fake, r.split.c_str(), r.eer, r.threshold, r.n_real,
                r.n_fake);
  return buf;
}

}  // namespace scar::train
