// tests/oracles.h

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

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace scar::oracle {

// Row-major dense matrix.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;
  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return v[i * cols + j];
  }
};

inline Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < a.cols; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Mat columns(const Mat& a, std::size_t begin, std::size_t end) {
  Mat c(a.rows, end - begin);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = begin; j < end; ++j) c(i, j - begin) = a(i, j);
  return c;
}

// softmax(Q Kᵀ / sqrt(d_k)) V with the textbook exp / sum.
inline Mat attention(const Mat& q, const Mat& k, const Mat& v) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols));
  Mat out(q.rows, v.cols);
  for (std::size_t i = 0; i < q.rows; ++i) {
    std::vector<double> w(k.rows);
    double z = 0;
    for (std::size_t j = 0; j < k.rows; ++j) {
      double dot = 0;
      for (std::size_t c = 0; c < q.cols; ++c) dot += q(i, c) * k(j, c);
      w[j] = std::exp(dot * scale);
      z += w[j];
    }
    for (std::size_t j = 0; j < k.rows; ++j)
      for (std::size_t c = 0; c < v.cols; ++c) out(i, c) += w[j] / z * v(j, c);
  }
  return out;
}

// Each head sees an equal contiguous block of channels.
inline Mat multi_head(const Mat& q, const Mat& k, const Mat& v,
                      std::size_t heads) {
  const std::size_t dk = q.cols / heads;
  Mat out(q.rows, v.cols);
  for (std::size_t h = 0; h < heads; ++h) {
    const Mat o = attention(columns(q, h * dk, (h + 1) * dk),
                            columns(k, h * dk, (h + 1) * dk),
                            columns(v, h * dk, (h + 1) * dk));
    for (std::size_t i = 0; i < o.rows; ++i)
      for (std::size_t c = 0; c < dk; ++c) out(i, h * dk + c) = o(i, c);
  }
  return out;
}

struct NestedWeights {
  Mat q1a, k1b, v1b, q1b, k1a, v1a;
  Mat q2a, k2b, v2b, q2b, k2a, v2a;
};

struct NestedOut {
  Mat za1, zb1, za2, zb2, za3, zb3;
};

// Two cross-attention exchanges followed by projection-free self-attention
// on each branch.
inline NestedOut nested(const Mat& za, const Mat& zb, const NestedWeights& w,
                        std::size_t heads_cross, std::size_t heads_refine) {
  NestedOut o;
  o.za1 = multi_head(matmul(za, w.q1a), matmul(zb, w.k1b), matmul(zb, w.v1b),
                     heads_cross);
  o.zb1 = multi_head(matmul(zb, w.q1b), matmul(za, w.k1a), matmul(za, w.v1a),
                     heads_cross);
  o.za2 = multi_head(matmul(o.za1, w.q2a), matmul(o.zb1, w.k2b),
                     matmul(o.zb1, w.v2b), heads_cross);
  o.zb2 = multi_head(matmul(o.zb1, w.q2b), matmul(o.za1, w.k2a),
                     matmul(o.za1, w.v2a), heads_cross);
  o.za3 = multi_head(o.za2, o.za2, o.za2, heads_refine);
  o.zb3 = multi_head(o.zb2, o.zb2, o.zb2, heads_refine);
  return o;
}

// EER by direct counting. Candidate decision rules are "fake iff score >= t"
// for t at every distinct score plus one rule above every score; FAR and FRR
// are counted from scratch for each. The EER is taken where FAR - FRR first
// becomes <= 0, linearly interpolating FAR and FRR between the two rules that
// bracket the sign change.
inline double brute_force_eer(const std::vector<double>& scores,
                              const std::vector<std::uint8_t>& labels) {
  std::vector<double> cuts(scores);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double above = cuts.back() + 1.0;
  cuts.push_back(above);
  std::size_t n_real = 0, n_fake = 0;
  for (auto l : labels) (l ? n_fake : n_real) += 1;

  double prev_far = 1.0, prev_frr = 0.0;
  for (double t : cuts) {
    std::size_t fa = 0, fr = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (labels[i] == 0 && scores[i] >= t) ++fa;
      if (labels[i] == 1 && scores[i] < t) ++fr;
    }
    const double far = static_cast<double>(fa) / n_real;
    const double frr = static_cast<double>(fr) / n_fake;
    if (fa * n_fake == fr * n_real) return far;
    if (far < frr) {
      const double d0 = prev_far - prev_frr;
      const double d1 = far - frr;
      const double lambda = d0 / (d0 - d1);
      return prev_far + lambda * (far - prev_far);
    }
    prev_far = far;
    prev_frr = frr;
  }
  return prev_far;
}

// Learnable scalars of each architecture, written out layer by layer.
inline std::size_t head_params(std::size_t width) {
  return width * 512 + 512 + 512 * 128 + 128 + 128 * 1 + 1;
}
inline std::size_t conv_block_params() { return 32 * 1 * 3 + 32; }
inline std::size_t fcn_params(std::size_t d) { return head_params(d); }
inline std::size_t cnn_params(std::size_t tokens) {
  return conv_block_params() + head_params(32 * tokens);
}
inline std::size_t concat_params(std::size_t tokens) {
  return 2 * conv_block_params() + head_params(2 * 32 * tokens);
}
inline std::size_t scar_params(std::size_t tokens) {
  return concat_params(tokens) + 12 * 32 * 32;
}

}  // namespace scar::oracle
